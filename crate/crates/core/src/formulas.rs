//! Exact rational evaluation of the closed-form product expressions:
//! hyperfactorials, the boxed-plane-partition product, semihexagon and
//! trapezoid counts, and the ratio formulas for symmetric and plain
//! fern-cored tilings.

use crate::counting::{count_symmetric_tilings, count_tilings, BigCount};
use crate::region::{build_fern_cored, FernSpec};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use std::sync::RwLock;

/// Exact rational value; comparisons are decidable equalities.
pub type ExactRatio = num_rational::Ratio<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("argument must be non-negative")]
    Negative,
    #[error("x, y, z must be even")]
    ParityViolation,
    #[error("x, y, z must have the same parity")]
    ParityMismatch,
    #[error("x must be at least -1")]
    XTooSmall,
    #[error("gap list must be one shorter than the fern list")]
    BadGapCount,
    #[error("duplicate or out-of-range position")]
    PositionsInvalid,
    #[error("expected an integer value")]
    NotInteger,
}

/// The hyperfactorial `h(n) = 0! 1! ... (n-1)!`, from a monotone cache that
/// is extended under a write lock and otherwise only read.
pub fn hyperfactorial(n: i64) -> Result<BigCount, FormulaError> {
    if n < 0 {
        return Err(FormulaError::Negative);
    }
    static CACHE: RwLock<Vec<(BigUint, BigUint)>> = RwLock::new(Vec::new());
    let n = n as usize;
    {
        let cache = CACHE.read().expect("hyperfactorial cache poisoned");
        if let Some((h, _)) = cache.get(n) {
            return Ok(h.clone());
        }
    }
    let mut cache = CACHE.write().expect("hyperfactorial cache poisoned");
    if cache.is_empty() {
        // pairs (h(k), k!)
        cache.push((BigUint::one(), BigUint::one()));
    }
    while cache.len() <= n {
        let k = cache.len();
        let (h_prev, fact_prev) = cache.last().expect("nonempty").clone();
        let h = &h_prev * &fact_prev;
        let fact = fact_prev * BigUint::from(k);
        cache.push((h, fact));
    }
    Ok(cache[n].0.clone())
}

fn h_ratio(num_arg: i64, den_arg: i64) -> Result<ExactRatio, FormulaError> {
    Ok(ExactRatio::new(
        BigInt::from(hyperfactorial(num_arg)?),
        BigInt::from(hyperfactorial(den_arg)?),
    ))
}

fn ratio_one() -> ExactRatio {
    ExactRatio::one()
}

/// Reduce an exact ratio known to be an integer to a `BigCount`.
pub fn ratio_to_count(r: &ExactRatio) -> Result<BigCount, FormulaError> {
    if !r.is_integer() || r.is_negative() {
        return Err(FormulaError::NotInteger);
    }
    r.to_integer().to_biguint().ok_or(FormulaError::NotInteger)
}

/// Number of lozenge tilings of the hexagon with sides `x, y, z, x, y, z`:
/// the triple product over `(i+j+k-1)/(i+j+k-2)`, evaluated exactly with a
/// single division at the end.
pub fn macmahon(x: i64, y: i64, z: i64) -> Result<BigCount, FormulaError> {
    if x < 0 || y < 0 || z < 0 {
        return Err(FormulaError::Negative);
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=x {
        for j in 1..=y {
            for k in 1..=z {
                num *= BigUint::from((i + j + k - 1) as u64);
                den *= BigUint::from((i + j + k - 2) as u64);
            }
        }
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    if !r.is_zero() {
        return Err(FormulaError::NotInteger);
    }
    Ok(q)
}

/// Tiling count of the semihexagon `S(b_1, ..., b_l)` as a hyperfactorial
/// ratio. An even-length list reduces to the list without its last entry
/// (trailing forced lozenges), after which the odd-length product applies.
pub fn s_value(b: &[i64]) -> Result<ExactRatio, FormulaError> {
    if b.iter().any(|&v| v < 0) {
        return Err(FormulaError::Negative);
    }
    let mut list = b.to_vec();
    if list.len().is_multiple_of(2) && !list.is_empty() {
        list.pop();
    }
    if list.is_empty() {
        return Ok(ratio_one());
    }
    let l = list.len();
    let mut value = ratio_one();
    for i in 0..l {
        let mut sum = 0i64;
        for (span, &entry) in list[i..].iter().enumerate().map(|(j, v)| (j + 1, v)) {
            sum += entry;
            let h = BigInt::from(hyperfactorial(sum)?);
            if span % 2 == 1 {
                value *= ExactRatio::from(h);
            } else {
                value /= ExactRatio::from(h);
            }
        }
    }
    let odd_sum: i64 = list.iter().step_by(2).sum();
    value /= ExactRatio::from(BigInt::from(hyperfactorial(odd_sum)?));
    Ok(value)
}

/// `s_value` with the integrality assertion applied.
pub fn s_count(b: &[i64]) -> Result<BigCount, FormulaError> {
    ratio_to_count(&s_value(b)?)
}

/// Tiling count of the trapezoid `T_{m,n}(x_1, ..., x_n)`:
/// the product over `i < j` of `(x_j - x_i) / (j - i)`.
pub fn trapezoid_count(m: i64, n: i64, positions: &[i64]) -> Result<ExactRatio, FormulaError> {
    if m < 0 || n < 0 {
        return Err(FormulaError::Negative);
    }
    if positions.len() as i64 != n
        || positions.windows(2).any(|w| w[0] >= w[1])
        || positions.iter().any(|&x| x < 1 || x > m + n)
    {
        return Err(FormulaError::PositionsInvalid);
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            num *= BigInt::from(positions[j] - positions[i]);
            den *= BigInt::from((j - i) as i64);
        }
    }
    Ok(ExactRatio::new(num, den))
}

fn normalize_half(half: &[i64]) -> Vec<i64> {
    if half.is_empty() {
        vec![0]
    } else {
        half.to_vec()
    }
}

/// Right-hand side of the symmetric-count ratio formula for fern-cored
/// hexagons with even `x, y, z`: callers pass the half lobe list
/// `a_1..a_k`; the mirrored conventions are applied internally.
pub fn theorem1_rhs(x: i64, y: i64, z: i64, half: &[i64]) -> Result<ExactRatio, FormulaError> {
    if x < 0 || y < 0 || z < 0 || half.iter().any(|&a| a < 0) {
        return Err(FormulaError::Negative);
    }
    if x % 2 != 0 || y % 2 != 0 || z % 2 != 0 {
        return Err(FormulaError::ParityViolation);
    }
    let half = normalize_half(half);
    let k = half.len();
    let mut full = half.clone();
    full.extend(half.iter().rev());
    let total: i64 = half.iter().sum();

    let xy = (x + y) / 2;
    let xz = (x + z) / 2;
    let mut value = s_value(&full)?;
    value *= h_ratio(xz + total, xy + total)?;
    let mut c = 0i64;
    for (m, &a) in full.iter().enumerate().take(2 * k - 1) {
        c += a;
        let m = m + 1; // 1-indexed position
        if m % 2 == 1 {
            value *= h_ratio(xy + c, xz + c)?;
        } else {
            value *= h_ratio(xz + c, xy + c)?;
        }
    }
    Ok(value)
}

/// Right-hand side of the symmetric-count ratio formula for the primed
/// regions (`x >= -1`, same parity). Internally `a_{k+1} = a_k + 1` and
/// `a_{k+i} = a_{k-i+1}` for `i >= 2`.
pub fn theorem2_rhs(x: i64, y: i64, z: i64, half: &[i64]) -> Result<ExactRatio, FormulaError> {
    if x < -1 {
        return Err(FormulaError::XTooSmall);
    }
    if y < 0 || z < 0 || half.iter().any(|&a| a < 0) {
        return Err(FormulaError::Negative);
    }
    if x.rem_euclid(2) != y.rem_euclid(2) || y.rem_euclid(2) != z.rem_euclid(2) {
        return Err(FormulaError::ParityMismatch);
    }
    let half = normalize_half(half);
    let k = half.len();
    let total: i64 = half.iter().sum();

    // s-argument: the mirrored list with the unit increment on the inner
    // lobe, a_1..a_{k-1}, a_k + 1, a_k, ..., a_1.
    let mut s_list = half[..k - 1].to_vec();
    s_list.push(half[k - 1] + 1);
    s_list.extend(half.iter().rev());

    // Partial sums for the two products carry the increment on the
    // even-indexed central copy (the down-pointing one): position k when k
    // is even, position k+1 when k is odd. Pinned against exact symmetric
    // counts across parities and lobe counts.
    let psums_list = if k.is_multiple_of(2) {
        s_list.clone()
    } else {
        let mut v = half.clone();
        v.push(half[k - 1] + 1);
        v.extend(half[..k - 1].iter().rev());
        v
    };

    let xy = (x + y).div_euclid(2);
    let xz = (x + z).div_euclid(2);
    let mut value = s_value(&s_list)?;
    value *= h_ratio(xz + total, xy + total)?;
    let mut c = 0i64;
    for (m, &a) in psums_list.iter().enumerate().take(2 * k - 1) {
        c += a;
        let m = m + 1;
        if m % 2 == 1 {
            value *= h_ratio(xy + c, xz + c)?;
        } else {
            value *= h_ratio(xz + c, xy + c)?;
        }
    }
    Ok(value)
}

/// Origin for cumulative lobe distances. Numerically both give the same
/// prefix sums: the first fern is based at the auxiliary-hexagon center,
/// which is also the leftmost point of the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LobeOrigin {
    AuxCenter,
    SystemLeft,
}

/// Cumulative distances `r_i` from the origin to the right end of the i-th
/// lobe of the fern system, with gaps added between consecutive ferns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LobeGeometry {
    pub r: Vec<i64>,
    pub k: usize,
}

pub fn lobe_geometry(gaps: &[i64], ferns: &[Vec<i64>], _origin: LobeOrigin) -> LobeGeometry {
    let mut r = Vec::new();
    let mut pos = 0i64;
    for (i, fern) in ferns.iter().enumerate() {
        if i > 0 {
            pos += gaps.get(i - 1).copied().unwrap_or(0);
        }
        for &a in fern {
            pos += a;
            r.push(pos);
        }
    }
    let k = r.len();
    LobeGeometry { r, k }
}

fn pad_even(fern: &[i64]) -> Vec<i64> {
    let mut f = fern.to_vec();
    if f.is_empty() {
        f.push(0);
    }
    if f.len() % 2 == 1 {
        f.push(0);
    }
    f
}

/// The gap-absorbed concatenation used as the s-argument of the multi-fern
/// formulas: fern 1 in full, then for each later fern its first lobe
/// augmented by the preceding gap, then the rest of its lobes.
fn gap_absorbed(gaps: &[i64], ferns: &[Vec<i64>]) -> Vec<i64> {
    let mut list = Vec::new();
    for (i, fern) in ferns.iter().enumerate() {
        if i == 0 {
            list.extend_from_slice(fern);
        } else {
            list.push(gaps[i - 1] + fern[0]);
            list.extend_from_slice(&fern[1..]);
        }
    }
    list
}

/// The boxed-product value as an exact ratio, in its hyperfactorial form
/// `h(a) h(b) h(c) h(a+b+c) / (h(a+b) h(a+c) h(b+c))`.
fn box_product(a: i64, b: i64, c: i64) -> Result<ExactRatio, FormulaError> {
    let mut v = ExactRatio::from(BigInt::from(hyperfactorial(a)?));
    v *= ExactRatio::from(BigInt::from(hyperfactorial(b)?));
    v *= ExactRatio::from(BigInt::from(hyperfactorial(c)?));
    v *= ExactRatio::from(BigInt::from(hyperfactorial(a + b + c)?));
    v /= ExactRatio::from(BigInt::from(hyperfactorial(a + b)?));
    v /= ExactRatio::from(BigInt::from(hyperfactorial(a + c)?));
    v /= ExactRatio::from(BigInt::from(hyperfactorial(b + c)?));
    Ok(v)
}

/// Append a removed run of size `r` to a run list, inserting an empty
/// intact run first when needed so `r` lands on removed parity.
fn append_removed(l: &mut Vec<i64>, r: i64) {
    if l.len() % 2 == 1 {
        l.push(0);
    }
    l.push(r);
}

/// Run list of the half of the fern system above its line: a removed flank
/// of `left`, the lobes with up-pointing ones removed, gaps merged into the
/// preceding intact run, and a removed flank of `right`.
fn upper_half_list(left: i64, gaps: &[i64], ferns: &[Vec<i64>], right: i64) -> Vec<i64> {
    let mut l = vec![left, 0];
    for (i, f) in ferns.iter().enumerate() {
        l.extend_from_slice(f);
        if i < gaps.len() {
            *l.last_mut().expect("fern lists are nonempty") += gaps[i];
        }
    }
    append_removed(&mut l, right);
    l
}

/// Run list of the half below the line: the roles of removed and intact
/// lobes swap, flanks swap sides, and gaps stand alone as intact runs.
fn lower_half_list(left: i64, gaps: &[i64], ferns: &[Vec<i64>], right: i64) -> Vec<i64> {
    let mut l = vec![left];
    for (i, f) in ferns.iter().enumerate() {
        l.extend_from_slice(f);
        if i < gaps.len() {
            l.push(gaps[i]);
            l.push(0);
        }
    }
    append_removed(&mut l, right);
    l
}

/// Right-hand side of the plain-count ratio formula for multi-fern
/// regions. Fern lists are padded to even length with a trailing zero.
///
/// Evaluated through the two-half factorization: the tiling count of each
/// region factors over the halves above and below the fern line (each a
/// dented trapezoid, counted by `s_value` of its run list with flanks
/// `(x+y)/2` and `(x+z)/2`), and the ratio carries the boxed-product
/// correction `P(u,d,(y+z)/2) / P(u,d,x+(y+z)/2)`. Exact on all same-parity
/// parameters and on the x-odd-parity class (verified against exact counts
/// across sweeps); the remaining mixed-parity classes are reported, not
/// asserted, by the verifier.
pub fn conjecture1_rhs(
    x: i64,
    y: i64,
    z: i64,
    gaps: &[i64],
    ferns: &[Vec<i64>],
) -> Result<ExactRatio, FormulaError> {
    if x < 0 || y < 0 || z < 0 {
        return Err(FormulaError::Negative);
    }
    if gaps.len() + 1 != ferns.len() {
        return Err(FormulaError::BadGapCount);
    }
    if gaps.iter().any(|&g| g < 0) || ferns.iter().flatten().any(|&a| a < 0) {
        return Err(FormulaError::Negative);
    }
    let padded: Vec<Vec<i64>> = ferns.iter().map(|f| pad_even(f)).collect();
    let normalizer: Vec<Vec<i64>> = padded
        .iter()
        .map(|f| vec![f.iter().sum(), 0])
        .collect();
    let up_total: i64 = padded.iter().flat_map(|f| f.iter().step_by(2)).sum();
    let down_total: i64 = padded.iter().flat_map(|f| f.iter().skip(1).step_by(2)).sum();

    // flanks: floors and ceilings pair up so each doubled half-sum is
    // consumed exactly once per side
    let u2 = x + y;
    let v2 = x + z;
    let w2 = y + z;
    let (uu, lu) = (u2.div_euclid(2), (u2 + 1).div_euclid(2));
    let (lv, uv) = (v2.div_euclid(2), (v2 + 1).div_euclid(2));

    let part = |fs: &[Vec<i64>]| -> Result<ExactRatio, FormulaError> {
        Ok(s_value(&upper_half_list(uu, gaps, fs, uv))?
            * s_value(&lower_half_list(lv, gaps, fs, lu))?)
    };
    let mut value = part(&padded)? / part(&normalizer)?;
    value *= box_product(up_total, down_total, w2.div_euclid(2))?;
    value /= box_product(up_total, down_total, (u2 + v2).div_euclid(2))?;
    Ok(value)
}

/// The single-fern specialization of the multi-fern formula (the `n = 1`
/// case, which is proved).
pub fn singlefern_rhs(x: i64, y: i64, z: i64, lobes: &[i64]) -> Result<ExactRatio, FormulaError> {
    conjecture1_rhs(x, y, z, &[], &[lobes.to_vec()])
}

/// The two-lobe specialization: the ratio for the fern `F(o, e)` with `o`
/// and `e` the up- and down-lobe totals of the original fern. The quotient
/// of the single-fern form by this one is the two-lobe-normalized ratio.
pub fn twolobe_rhs(x: i64, y: i64, z: i64, lobes: &[i64]) -> Result<ExactRatio, FormulaError> {
    if lobes.iter().any(|&a| a < 0) {
        return Err(FormulaError::Negative);
    }
    let o: i64 = lobes.iter().step_by(2).sum();
    let e: i64 = lobes.iter().skip(1).step_by(2).sum();
    conjecture1_rhs(x, y, z, &[], &[vec![o, e]])
}

/// Right-hand side of the symmetric-system ratio formula: `n` ferns, their
/// mirror images, and the symmetric gap list `g_1..g_n..g_1`. Returns the
/// product side; the square-root middle identity is checked by the
/// verifier against exact counts.
pub fn conjecture2_rhs(
    x: i64,
    y: i64,
    z: i64,
    gaps: &[i64],
    ferns: &[Vec<i64>],
) -> Result<ExactRatio, FormulaError> {
    if x < 0 || y < 0 || z < 0 {
        return Err(FormulaError::Negative);
    }
    if x.rem_euclid(2) != y.rem_euclid(2) || y.rem_euclid(2) != z.rem_euclid(2) {
        return Err(FormulaError::ParityMismatch);
    }
    if gaps.len() != ferns.len() {
        return Err(FormulaError::BadGapCount);
    }
    if gaps.iter().any(|&g| g < 0) || ferns.iter().flatten().any(|&a| a < 0) {
        return Err(FormulaError::Negative);
    }
    let halves: Vec<Vec<i64>> = ferns.iter().map(|f| pad_even(f)).collect();
    let (full_gaps, full_ferns) = symmetric_system(gaps, &halves);

    let list = gap_absorbed(&full_gaps, &full_ferns);
    let geom = lobe_geometry(&full_gaps, &full_ferns, LobeOrigin::SystemLeft);
    let k = geom.k;
    let r = &geom.r;

    let xy = (x + y) / 2;
    let xz = (x + z) / 2;
    let mut value = s_value(&list)?;
    for m in 1..k {
        let rm = r[m - 1];
        if m % 2 == 1 {
            value *= h_ratio(xy + rm, xz + rm)?;
        } else {
            value *= h_ratio(xz + rm, xy + rm)?;
        }
    }
    Ok(value)
}

/// The mirrored fern system of the symmetric-system formula: ferns
/// `a^(1)..a^(n)` followed by their reversals in opposite order, with gaps
/// `g_1..g_{n-1}, g_n, g_{n-1}..g_1`.
pub fn symmetric_system(gaps: &[i64], halves: &[Vec<i64>]) -> (Vec<i64>, Vec<Vec<i64>>) {
    let n = halves.len();
    let mut full_ferns: Vec<Vec<i64>> = halves.to_vec();
    for f in halves.iter().rev() {
        let mut rev = f.clone();
        rev.reverse();
        full_ferns.push(rev);
    }
    let mut full_gaps: Vec<i64> = gaps[..n - 1].to_vec();
    full_gaps.push(gaps[n - 1]);
    full_gaps.extend(gaps[..n - 1].iter().rev());
    (full_gaps, full_ferns)
}

/// The literal assertable form of the square-root identity: the symmetric
/// count ratio squared equals the plain count ratio, as exact rationals.
pub fn theorem1_sqrt_check(x: i64, y: i64, z: i64, half: &[i64]) -> Result<bool, crate::Error> {
    let half_norm = normalize_half(half);
    let total: i64 = half_norm.iter().sum();
    let numer = build_fern_cored(x, y, z, &FernSpec::symmetric_double(&half_norm))?;
    let denom = build_fern_cored(x, y, z, &FernSpec::new([total, total]))?;
    let ms_n = count_symmetric_tilings(&numer)?;
    let ms_d = count_symmetric_tilings(&denom)?;
    let m_n = count_tilings(&numer)?;
    let m_d = count_tilings(&denom)?;
    // (ms_n/ms_d)^2 == m_n/m_d  <=>  ms_n^2 * m_d == m_n * ms_d^2
    Ok(&ms_n * &ms_n * &m_d == &m_n * &ms_d * &ms_d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_tilings;
    use crate::region::{build_hexagon, build_semihexagon, build_trapezoid};

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn ratio(n: i64, d: i64) -> ExactRatio {
        ExactRatio::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn hyperfactorials() {
        assert_eq!(hyperfactorial(0).unwrap(), big(1));
        assert_eq!(hyperfactorial(1).unwrap(), big(1));
        assert_eq!(hyperfactorial(2).unwrap(), big(1));
        assert_eq!(hyperfactorial(3).unwrap(), big(2));
        assert_eq!(hyperfactorial(4).unwrap(), big(12));
        // 1 * 1 * 2 * 6 * 24
        assert_eq!(hyperfactorial(5).unwrap(), big(288));
        assert!(hyperfactorial(-1).is_err());
    }

    #[test]
    fn macmahon_small_boxes() {
        assert_eq!(macmahon(1, 1, 1).unwrap(), big(2));
        assert_eq!(macmahon(2, 2, 2).unwrap(), big(20));
        assert_eq!(macmahon(0, 3, 5).unwrap(), big(1));
        assert_eq!(macmahon(3, 3, 3).unwrap(), big(980));
        // cross-check against the enumeration kernel
        for (x, y, z) in [(1, 2, 3), (2, 2, 1), (3, 1, 2)] {
            let h = build_hexagon(x, y, z).unwrap();
            assert_eq!(count_tilings(&h).unwrap(), macmahon(x, y, z).unwrap());
        }
    }

    #[test]
    fn s_values() {
        // s(b1) = 1: the formula collapses to h(b1)/h(b1).
        for b1 in 0..5 {
            assert_eq!(s_value(&[b1]).unwrap(), ratio(1, 1));
        }
        // s(1,1,1) = h(1)^3 h(3) / (h(2)^2 h(2)) = 2
        assert_eq!(s_value(&[1, 1, 1]).unwrap(), ratio(2, 1));
        // s(a,a) = 1 via the even-length reduction
        for a in 0..5 {
            assert_eq!(s_value(&[a, a]).unwrap(), ratio(1, 1));
        }
        // even-length reduction in general
        for b in [vec![1, 2, 3, 1], vec![2, 1], vec![1, 1, 1, 2, 2, 1]] {
            assert_eq!(s_value(&b).unwrap(), s_value(&b[..b.len() - 1]).unwrap());
        }
        // agreement with enumeration
        for b in [vec![1, 1, 1], vec![2, 1, 1], vec![1, 2, 1], vec![2, 2, 2], vec![3, 1, 2]] {
            let s = build_semihexagon(&b).unwrap();
            assert_eq!(
                BigInt::from(count_tilings(&s).unwrap()),
                s_value(&b).unwrap().to_integer(),
                "S({b:?})"
            );
        }
    }

    #[test]
    fn trapezoid_products() {
        assert_eq!(trapezoid_count(1, 2, &[1, 3]).unwrap(), ratio(2, 1));
        assert_eq!(trapezoid_count(2, 2, &[1, 4]).unwrap(), ratio(3, 1));
        assert_eq!(trapezoid_count(3, 1, &[2]).unwrap(), ratio(1, 1));
        assert!(trapezoid_count(1, 2, &[1, 1]).is_err());
        for (m, n, pos) in [(2, 2, vec![1, 3]), (1, 3, vec![1, 2, 4]), (3, 2, vec![2, 5])] {
            let t = build_trapezoid(m, n, &pos).unwrap();
            assert_eq!(
                BigInt::from(count_tilings(&t).unwrap()),
                trapezoid_count(m, n, &pos).unwrap().to_integer()
            );
        }
    }

    #[test]
    fn theorem_rhs_normalization_identities() {
        // k = 1: the region coincides with its normalizer, so the value is 1.
        for (x, y, z) in [(0, 0, 0), (2, 0, 4), (2, 2, 2), (4, 2, 0)] {
            for a in 0..4 {
                assert_eq!(theorem1_rhs(x, y, z, &[a]).unwrap(), ratio(1, 1));
            }
        }
        for (x, y, z) in [(-1, 1, 1), (0, 0, 2), (1, 3, 3), (2, 2, 4), (3, 1, 1)] {
            for a in 0..4 {
                assert_eq!(theorem2_rhs(x, y, z, &[a]).unwrap(), ratio(1, 1));
            }
        }
        // all-zero lobes: empty fern on both sides
        assert_eq!(theorem1_rhs(2, 4, 2, &[0, 0, 0]).unwrap(), ratio(1, 1));
        assert_eq!(theorem1_rhs(2, 4, 2, &[]).unwrap(), ratio(1, 1));

        assert!(theorem1_rhs(1, 1, 1, &[1]).is_err());
        assert!(theorem2_rhs(1, 2, 1, &[1]).is_err());
        assert!(theorem2_rhs(-2, 0, 0, &[1]).is_err());
    }

    #[test]
    fn lobe_geometry_prefix_sums() {
        let g = lobe_geometry(&[], &[vec![1, 2, 6, 3]], LobeOrigin::AuxCenter);
        assert_eq!(g.r, vec![1, 3, 9, 12]);
        assert_eq!(g.k, 4);
        let g = lobe_geometry(&[2], &[vec![1], vec![1]], LobeOrigin::SystemLeft);
        assert_eq!(g.r, vec![1, 4]);
        let g = lobe_geometry(&[], &[vec![]], LobeOrigin::AuxCenter);
        assert!(g.r.is_empty());
    }

    #[test]
    fn twolobe_matches_singlefern_on_two_lobes() {
        for (x, y, z) in [(1, 1, 1), (2, 3, 1), (0, 2, 4), (1, 2, 2)] {
            for (o, e) in [(1, 1), (2, 1), (0, 2), (3, 0)] {
                assert_eq!(
                    twolobe_rhs(x, y, z, &[o, e]).unwrap(),
                    singlefern_rhs(x, y, z, &[o, e]).unwrap(),
                    "x={x} y={y} z={z} o={o} e={e}"
                );
            }
        }
    }

    #[test]
    fn sqrt_check_trivial_cases() {
        // k = 1 instances: both ratios are 1.
        assert!(theorem1_sqrt_check(2, 2, 2, &[1]).unwrap());
        assert!(theorem1_sqrt_check(0, 2, 2, &[2]).unwrap());
    }
}

#[cfg(test)]
mod reduction_tests {
    use super::*;

    #[test]
    fn singlefern_is_the_single_system_case() {
        // structural identity: one fern, no gaps
        for (x, y, z) in [(1, 1, 1), (2, 3, 1), (0, 2, 4)] {
            for lobes in [vec![1, 1], vec![2, 1, 1], vec![0, 2]] {
                assert_eq!(
                    singlefern_rhs(x, y, z, &lobes).unwrap(),
                    conjecture1_rhs(x, y, z, &[], std::slice::from_ref(&lobes)).unwrap()
                );
            }
        }
    }

    #[test]
    fn s_count_rejects_nothing_on_valid_lists() {
        for b in [vec![1, 2, 3], vec![0, 0, 1], vec![4]] {
            s_count(&b).unwrap();
        }
    }

    #[test]
    fn symmetric_system_mirrors_ferns_and_gaps() {
        let (gaps, ferns) = symmetric_system(&[1, 2], &[vec![1, 0], vec![2, 1]]);
        assert_eq!(gaps, vec![1, 2, 1]);
        assert_eq!(
            ferns,
            vec![vec![1, 0], vec![2, 1], vec![1, 2], vec![0, 1]]
        );
    }
}
