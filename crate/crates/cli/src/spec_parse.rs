//! The canonical text form of region specs: `family:key=value,...` with
//! comma-separated integer lists, e.g. `fc:x=2,y=6,z=4,a=1,2,6,3` or
//! `fcp:x=-1,y=3,z=3,a=4,1`. Negative values are permitted only for the
//! `x` of `fcp`.

use anyhow::{anyhow, bail, Result};
use lozenge_core::region::{FernSpec, RegionSpec};
use std::collections::BTreeMap;

pub fn parse_region_spec(input: &str) -> Result<RegionSpec> {
    let (family, rest) = input
        .split_once(':')
        .ok_or_else(|| anyhow!("missing ':' after family name (at position 0)"))?;
    let args = parse_kv(rest, family.len() + 1)?;
    let scalar = |key: &str| -> Result<i64> {
        let vals = args
            .get(key)
            .ok_or_else(|| anyhow!("missing key '{key}' in '{input}'"))?;
        if vals.len() != 1 {
            bail!("key '{key}' expects a single integer");
        }
        Ok(vals[0])
    };
    let list = |key: &str| -> Result<Vec<i64>> {
        Ok(args
            .get(key)
            .ok_or_else(|| anyhow!("missing key '{key}' in '{input}'"))?
            .clone())
    };
    let spec = match family {
        "hex" => RegionSpec::Hexagon { x: scalar("x")?, y: scalar("y")?, z: scalar("z")? },
        "s" => RegionSpec::SemiHexagon { b: list("b")? },
        "t" => RegionSpec::Trapezoid {
            m: scalar("m")?,
            n: scalar("n")?,
            positions: args.get("pos").cloned().unwrap_or_default(),
        },
        "fc" => RegionSpec::FernCored {
            x: scalar("x")?,
            y: scalar("y")?,
            z: scalar("z")?,
            fern: FernSpec::new(args.get("a").cloned().unwrap_or_default()),
        },
        "fcp" => RegionSpec::FernCoredPrime {
            x: scalar("x")?,
            y: scalar("y")?,
            z: scalar("z")?,
            half: FernSpec::new(args.get("a").cloned().unwrap_or_default()),
        },
        "mf" => {
            let gaps = args.get("g").cloned().unwrap_or_default();
            let mut ferns = Vec::new();
            for i in 1.. {
                match args.get(&format!("a{i}")) {
                    Some(f) => ferns.push(FernSpec::new(f.clone())),
                    None => break,
                }
            }
            if ferns.is_empty() {
                bail!("mf needs fern lists a1=..., a2=..., ...");
            }
            RegionSpec::MultiFern {
                x: scalar("x")?,
                y: scalar("y")?,
                z: scalar("z")?,
                gaps,
                ferns,
            }
        }
        other => bail!("unknown region family '{other}' (at position 0)"),
    };
    // negative values only for fcp's x
    let neg_ok = |k: &str| family == "fcp" && k == "x";
    for (k, vals) in &args {
        if vals.iter().any(|&v| v < 0) && !neg_ok(k) {
            bail!("negative value for key '{k}' is only permitted for fcp's x");
        }
    }
    Ok(spec)
}

/// Parse `key=int,int,...` sequences; a token containing '=' starts a new
/// key, bare integer tokens extend the current key's list.
fn parse_kv(rest: &str, offset: usize) -> Result<BTreeMap<String, Vec<i64>>> {
    let mut map: BTreeMap<String, Vec<i64>> = BTreeMap::new();
    let mut current: Option<String> = None;
    let mut pos = offset;
    for token in rest.split(',') {
        if let Some((key, val)) = token.split_once('=') {
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric()) {
                bail!("bad key '{key}' at position {pos}");
            }
            let v: i64 = val
                .trim()
                .parse()
                .map_err(|_| anyhow!("bad integer '{val}' at position {}", pos + key.len() + 1))?;
            map.entry(key.to_string()).or_default().push(v);
            current = Some(key.to_string());
        } else {
            let key = current
                .clone()
                .ok_or_else(|| anyhow!("value '{token}' without a key at position {pos}"))?;
            let v: i64 = token
                .trim()
                .parse()
                .map_err(|_| anyhow!("bad integer '{token}' at position {pos}"))?;
            map.get_mut(&key).expect("current key exists").push(v);
        }
        pos += token.len() + 1;
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fig1_spec() {
        let spec = parse_region_spec("fc:x=2,y=6,z=4,a=1,2,6,3").unwrap();
        assert_eq!(spec.hexagon_sides().unwrap(), [7, 13, 9, 9, 11, 11]);
    }

    #[test]
    fn parses_primed_and_lists() {
        let spec = parse_region_spec("fcp:x=-1,y=3,z=3,a=4,1").unwrap();
        match spec {
            RegionSpec::FernCoredPrime { x, half, .. } => {
                assert_eq!(x, -1);
                assert_eq!(half.lobes, vec![4, 1]);
            }
            _ => panic!(),
        }
        let spec = parse_region_spec("s:b=3,3,2,5,4").unwrap();
        match spec {
            RegionSpec::SemiHexagon { b } => assert_eq!(b, vec![3, 3, 2, 5, 4]),
            _ => panic!(),
        }
        let spec = parse_region_spec("mf:x=2,y=2,z=2,g=2,a1=1,1,a2=1,1").unwrap();
        match spec {
            RegionSpec::MultiFern { gaps, ferns, .. } => {
                assert_eq!(gaps, vec![2]);
                assert_eq!(ferns.len(), 2);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_region_spec("hex:x=1,y=oops,z=1").unwrap_err().to_string();
        assert!(err.contains("position"), "{err}");
        assert!(parse_region_spec("nope:x=1").is_err());
        assert!(parse_region_spec("fc:x=-1,y=1,z=1").is_err());
    }
}
