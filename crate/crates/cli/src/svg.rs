//! Decorative SVG rendering of regions and tilings. Floating point lives
//! only here; the lattice basis maps to cartesian coordinates with e1 =
//! (1, 0) and e2 = (1/2, sqrt(3)/2), y flipped for screen space.

use lozenge_core::counting::Tiling;
use lozenge_core::geometry::{LatticeVertex, Region};

const SCALE: f64 = 28.0;
const SQ3_2: f64 = 0.866_025_403_784_438_6;

fn xy(v: &LatticeVertex) -> (f64, f64) {
    let x = v.p as f64 + v.q as f64 / 2.0;
    let y = -(v.q as f64) * SQ3_2;
    (x * SCALE, y * SCALE)
}

pub fn render(region: &Region, tiling: Option<&Tiling>) -> String {
    let mut min_x = f64::MAX;
    let mut min_y = f64::MAX;
    let mut max_x = f64::MIN;
    let mut max_y = f64::MIN;
    let mut polys = Vec::new();
    for cell in &region.cells {
        let pts: Vec<(f64, f64)> = cell.vertices().iter().map(xy).collect();
        for &(x, y) in &pts {
            min_x = min_x.min(x);
            min_y = min_y.min(y);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
        let fill = match cell.orient {
            lozenge_core::geometry::Orient::Up => "#dfe8f5",
            lozenge_core::geometry::Orient::Down => "#f5e8df",
        };
        polys.push(format!(
            r##"<polygon points="{}" fill="{fill}" stroke="#888" stroke-width="0.7"/>"##,
            pts.iter()
                .map(|(x, y)| format!("{x:.2},{y:.2}"))
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    let mut lozenges = Vec::new();
    if let Some(t) = tiling {
        for l in &t.lozenges {
            let mut vs: Vec<LatticeVertex> = Vec::new();
            let up = l.up_cell.vertices();
            let down = l.down_cell.vertices();
            // rhombus boundary: the four distinct vertices in convex order
            for v in up.iter().chain(down.iter()) {
                if !vs.contains(v) {
                    vs.push(*v);
                }
            }
            let mut pts: Vec<(f64, f64)> = vs.iter().map(xy).collect();
            // order around the centroid
            let cx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
            let cy = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
            pts.sort_by(|a, b| {
                let aa = (a.1 - cy).atan2(a.0 - cx);
                let bb = (b.1 - cy).atan2(b.0 - cx);
                aa.partial_cmp(&bb).expect("finite angles")
            });
            lozenges.push(format!(
                r##"<polygon points="{}" fill="none" stroke="#1a4a8a" stroke-width="2.0"/>"##,
                pts.iter()
                    .map(|(x, y)| format!("{x:.2},{y:.2}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
        }
    }
    if region.is_empty() {
        min_x = 0.0;
        min_y = 0.0;
        max_x = 1.0;
        max_y = 1.0;
    }
    let pad = 8.0;
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n{}\n{}\n</svg>\n",
        min_x - pad,
        min_y - pad,
        max_x - min_x + 2.0 * pad,
        max_y - min_y + 2.0 * pad,
        polys.join("\n"),
        lozenges.join("\n")
    )
}
