//! Counting solutions of the homogeneous modular systems behind every entry
//! of `B_{n,p^e}`: closed forms next to exhaustive scans.

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{domain, Error, Result};
use crate::modular::{nu_p_unchecked, PrimePower, Valuation};
use crate::projective::{advance, inner_mod, Point, SCAN_LIMIT};

/// Largest `p^e` the 2×2 brute-force oracle accepts.
pub const BRUTE_2X2_LIMIT: u64 = 64;

/// Number of `(x, y) ∈ Z_{p^e}^2` with `[a b; c d]·(x, y) ≡ 0 (mod p^e)`,
/// in closed form: `gcd(ad - bc, p^e · gcd(a, b, c, d, p^e))`.
pub fn count_2x2(a: i64, b: i64, c: i64, d: i64, pp: PrimePower) -> u64 {
    let q = pp.value() as i128;
    let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
    let g = [a, b, c, d].iter().fold(q, |g, x| g.gcd(x));
    let det = a * d - b * c;
    det.gcd(&(q * g)) as u64
}

/// The same count by trying every pair.
pub fn count_2x2_brute(a: i64, b: i64, c: i64, d: i64, pp: PrimePower) -> Result<u64> {
    let q = pp.value();
    if q > BRUTE_2X2_LIMIT {
        return Err(Error::Size {
            what: "p^e for the 2x2 scan",
            value: q.to_string(),
            limit: BRUTE_2X2_LIMIT.to_string(),
        });
    }
    let qi = q as i64;
    let mut count = 0;
    for x in 0..qi {
        for y in 0..qi {
            if (a * x + b * y).rem_euclid(qi) == 0 && (c * x + d * y).rem_euclid(qi) == 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Valuations of the 2×2 minors `ξ_ij = u_i v_j - u_j v_i` of a pair of
/// points, their minimum `α`, and `ξ = p^{min(α, e)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiData {
    /// `((i, j), ν_p(ξ_ij))` for `i < j`, zero-based.
    pub minors: Vec<((usize, usize), Valuation)>,
    pub alpha: Valuation,
    /// `ν_p(ξ) = min(α, e)`.
    pub nu_xi: u32,
    pub xi: u64,
}

fn check_pair(u: &Point, v: &Point, pp: PrimePower) -> Result<()> {
    if u.modulus() != pp.value() || v.modulus() != pp.value() {
        return Err(domain(format!(
            "points {u} and {v} must both live modulo {}",
            pp.value()
        )));
    }
    if u.dim() != v.dim() {
        return Err(domain(format!("{u} and {v} have different dimensions")));
    }
    Ok(())
}

fn minor(u: &Point, v: &Point, i: usize, j: usize) -> i128 {
    let (u, v) = (u.coords(), v.coords());
    u[i] as i128 * v[j] as i128 - u[j] as i128 * v[i] as i128
}

pub fn xi_data(u: &Point, v: &Point, pp: PrimePower) -> Result<XiData> {
    check_pair(u, v, pp)?;
    let n = u.dim();
    let mut minors = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            minors.push(((i, j), nu_p_unchecked(pp.p, minor(u, v, i, j))));
        }
    }
    let alpha = minors
        .iter()
        .map(|&(_, val)| val)
        .min()
        .unwrap_or(Valuation::Infinite);
    let nu_xi = alpha.min_with(pp.e);
    Ok(XiData {
        minors,
        alpha,
        nu_xi,
        xi: pp.p.pow(nu_xi),
    })
}

/// First index pair `(i, j)`, `i < j`, zero-based, with
/// `gcd(u_i, u_j, v_i, v_j, p^e) = 1` and `gcd(ξ_ij, p^e) = ξ`.
pub fn good_pair(u: &Point, v: &Point, pp: PrimePower) -> Result<(usize, usize)> {
    let data = xi_data(u, v, pp)?;
    let q = pp.value();
    let (uc, vc) = (u.coords(), v.coords());
    for i in 0..u.dim() {
        for j in i + 1..u.dim() {
            let g = [uc[i], uc[j], vc[i], vc[j]].iter().fold(q, |g, x| g.gcd(x));
            let minor_gcd = (minor(u, v, i, j).unsigned_abs() as u64).gcd(&q);
            if g == 1 && minor_gcd == data.xi {
                return Ok((i, j));
            }
        }
    }
    Err(Error::Invariant(format!(
        "no good coefficient pair for {u}, {v}"
    )))
}

/// The layer `p^g · Z_{p^e}^n` of tuples whose entries are all divisible by
/// `p^g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerSpec {
    g: u32,
    pp: PrimePower,
    n: usize,
}

impl LayerSpec {
    pub fn new(g: u32, pp: PrimePower, n: usize) -> Result<Self> {
        if g > pp.e {
            return Err(domain(format!("layer g = {g} exceeds e = {}", pp.e)));
        }
        if n < 2 {
            return Err(domain("layer dimension must be at least 2"));
        }
        Ok(LayerSpec { g, pp, n })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

fn check_layer(u: &Point, v: &Point, layer: &LayerSpec) -> Result<()> {
    check_pair(u, v, layer.pp)?;
    if u.dim() != layer.n {
        return Err(domain(format!(
            "layer has dimension {}, points have {}",
            layer.n,
            u.dim()
        )));
    }
    Ok(())
}

/// Solutions `w` of `<u,w> ≡ <v,w> ≡ 0 (mod p^e)` inside the layer:
/// `p^{β + (e-g)(n-2)}` with `β = min(ν_p(ξ), e - g)`.
pub fn count_layer(u: &Point, v: &Point, layer: &LayerSpec) -> Result<BigUint> {
    check_layer(u, v, layer)?;
    let data = xi_data(u, v, layer.pp)?;
    let room = layer.pp.e - layer.g;
    let beta = data.nu_xi.min(room);
    let exp = beta + room * (layer.n as u32 - 2);
    Ok(BigUint::from(layer.pp.p).pow(exp))
}

/// [`count_layer`] by scanning every tuple of the layer.
pub fn count_layer_brute(u: &Point, v: &Point, layer: &LayerSpec) -> Result<u64> {
    check_layer(u, v, layer)?;
    let q = layer.pp.value();
    let step = layer.pp.p.pow(layer.g);
    let span = q / step;
    scan_limit((span as u128).pow(layer.n as u32))?;
    let mut reduced = vec![0u64; layer.n];
    let mut w = vec![0u64; layer.n];
    let mut count = 0;
    loop {
        for (wi, &ri) in w.iter_mut().zip(&reduced) {
            *wi = ri * step;
        }
        if inner_mod(u.coords(), &w, q) == 0 && inner_mod(v.coords(), &w, q) == 0 {
            count += 1;
        }
        if !advance(&mut reduced, span) {
            break;
        }
    }
    Ok(count)
}

/// `N_uv`: solutions `w` that are primitive tuples, i.e. layer 0 minus
/// layer 1. Always a multiple of `φ(p^e)`.
pub fn count_primitive(u: &Point, v: &Point, pp: PrimePower) -> Result<BigUint> {
    let n = u.dim();
    let all = count_layer(u, v, &LayerSpec::new(0, pp, n)?)?;
    let divisible = count_layer(u, v, &LayerSpec::new(1, pp, n)?)?;
    Ok(all - divisible)
}

/// [`count_primitive`] by scanning `Z_{p^e}^n`.
pub fn count_primitive_brute(u: &Point, v: &Point, pp: PrimePower) -> Result<u64> {
    check_pair(u, v, pp)?;
    let q = pp.value();
    let n = u.dim();
    scan_limit((q as u128).pow(n as u32))?;
    let mut w = vec![0u64; n];
    let mut count = 0;
    loop {
        if w.iter().any(|c| c % pp.p != 0)
            && inner_mod(u.coords(), &w, q) == 0
            && inner_mod(v.coords(), &w, q) == 0
        {
            count += 1;
        }
        if !advance(&mut w, q) {
            break;
        }
    }
    Ok(count)
}

fn scan_limit(total: u128) -> Result<()> {
    if total > SCAN_LIMIT as u128 {
        return Err(Error::Size {
            what: "tuple scan",
            value: total.to_string(),
            limit: SCAN_LIMIT.to_string(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::{euler_phi, units};
    use crate::projective::{canonical_rep, ProjectiveSpace, DEFAULT_GUARDRAIL};
    use num_traits::ToPrimitive;

    fn pp(p: u64, e: u32) -> PrimePower {
        PrimePower::new(p, e).unwrap()
    }

    fn pt(coords: &[u64], m: u64) -> Point {
        canonical_rep(coords, m).unwrap()
    }

    #[test]
    fn count_2x2_examples() {
        assert_eq!(count_2x2(0, 0, 0, 0, pp(2, 2)), 16);
        assert_eq!(count_2x2(1, 0, 0, 1, pp(2, 2)), 1);
        assert_eq!(count_2x2_brute(2, 0, 0, 2, pp(2, 2)).unwrap(), 4);
        assert_eq!(count_2x2(2, 0, 0, 2, pp(2, 2)), 4);
    }

    #[test]
    fn count_2x2_brute_examples() {
        assert_eq!(count_2x2_brute(0, 0, 0, 0, pp(2, 2)).unwrap(), 16);
        assert_eq!(count_2x2_brute(1, 2, 3, 4, pp(5, 1)).unwrap(), 1);
        assert_eq!(count_2x2_brute(3, 1, 1, 3, pp(2, 3)).unwrap(), 8);
        assert_eq!(count_2x2(3, 1, 1, 3, pp(2, 3)), 8);
        assert!(count_2x2_brute(0, 0, 0, 0, pp(3, 4)).is_err());
    }

    #[test]
    fn count_2x2_exhaustive_small() {
        for q in [pp(2, 1), pp(3, 1), pp(2, 2), pp(5, 1)] {
            let m = q.value() as i64;
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        for d in 0..m {
                            assert_eq!(
                                count_2x2(a, b, c, d, q),
                                count_2x2_brute(a, b, c, d, q).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn xi_examples() {
        let q = pp(2, 2);
        let u = pt(&[0, 0, 1], 4);
        let d = xi_data(&u, &u, q).unwrap();
        assert_eq!(d.alpha, Valuation::Infinite);
        assert_eq!(d.xi, 4);

        let d = xi_data(&u, &pt(&[0, 1, 0], 4), q).unwrap();
        assert_eq!(d.alpha, Valuation::Finite(0));
        assert_eq!(d.xi, 1);
        // ξ_23 = 0·0 - 1·1 = -1 (one-based indices 2, 3)
        assert_eq!(d.minors[2], ((1, 2), Valuation::Finite(0)));

        let d = xi_data(&u, &pt(&[0, 2, 1], 4), q).unwrap();
        assert_eq!(d.alpha, Valuation::Finite(1));
        assert_eq!(d.xi, 2);
    }

    #[test]
    fn good_pair_examples() {
        let q = pp(2, 2);
        assert_eq!(
            good_pair(&pt(&[0, 0, 1], 4), &pt(&[0, 1, 0], 4), q).unwrap(),
            (1, 2)
        );
        let u = pt(&[1, 0, 0], 4);
        assert_eq!(good_pair(&u, &u, q).unwrap(), (0, 1));
    }

    /// Checks the defining condition of a good pair directly.
    fn is_good(u: &Point, v: &Point, q: PrimePower, (i, j): (usize, usize)) -> bool {
        let m = q.value();
        let (a, b) = (u.coords(), v.coords());
        let g = [a[i], a[j], b[i], b[j]].iter().fold(m, |g, x| g.gcd(x));
        let minors_gcd = (0..a.len())
            .flat_map(|s| (0..a.len()).map(move |t| (s, t)))
            .map(|(s, t)| {
                (a[s] as i128 * b[t] as i128 - a[t] as i128 * b[s] as i128).unsigned_abs() as u64
            })
            .fold(m, |acc, x| acc.gcd(&x));
        let mij = (a[i] as i128 * b[j] as i128 - a[j] as i128 * b[i] as i128).unsigned_abs() as u64;
        i != j && g == 1 && mij.gcd(&m) == minors_gcd
    }

    #[test]
    fn good_pair_all_pairs_mod_8() {
        let q = pp(2, 3);
        let s = ProjectiveSpace::lex(3, 8, DEFAULT_GUARDRAIL).unwrap();
        for u in s.points() {
            for v in s.points() {
                let ij = good_pair(u, v, q).unwrap();
                assert!(is_good(u, v, q, ij), "{u} {v} {ij:?}");
                let d = xi_data(u, v, q).unwrap();
                if u != v {
                    assert!(d.nu_xi < q.e);
                }
            }
        }
    }

    #[test]
    fn layer_examples() {
        let q = pp(2, 2);
        let (u, v) = (pt(&[0, 0, 1], 4), pt(&[0, 1, 0], 4));
        let l0 = LayerSpec::new(0, q, 3).unwrap();
        let l2 = LayerSpec::new(2, q, 3).unwrap();
        assert_eq!(count_layer(&u, &v, &l0).unwrap(), BigUint::from(4u32));
        assert_eq!(count_layer_brute(&u, &v, &l0).unwrap(), 4);
        assert_eq!(count_layer(&u, &v, &l2).unwrap(), BigUint::from(1u32));
        let w = pt(&[0, 2, 1], 4);
        assert_eq!(count_layer(&u, &w, &l0).unwrap(), BigUint::from(8u32));
        assert_eq!(count_layer_brute(&u, &w, &l0).unwrap(), 8);
        assert!(LayerSpec::new(3, q, 3).is_err());
    }

    #[test]
    fn primitive_count_examples() {
        let q = pp(2, 2);
        let u = pt(&[0, 0, 1], 4);
        let c = |v: &Point| count_primitive(&u, v, q).unwrap().to_u64().unwrap();
        assert_eq!(c(&u), 12);
        assert_eq!(c(&pt(&[0, 2, 1], 4)), 4);
        assert_eq!(c(&pt(&[0, 1, 0], 4)), 2);
        for v in [u.clone(), pt(&[0, 2, 1], 4), pt(&[0, 1, 0], 4)] {
            assert_eq!(c(&v), count_primitive_brute(&u, &v, q).unwrap());
        }
    }

    #[test]
    fn layer_counts_decrease_and_primitive_divisible() {
        let q = pp(3, 2);
        let s = ProjectiveSpace::lex(3, 9, DEFAULT_GUARDRAIL).unwrap();
        let phi = euler_phi(&q.modulus());
        assert_eq!(units(9).len() as u64, phi);
        for u in s.points().iter().step_by(7) {
            for v in s.points() {
                let counts: Vec<BigUint> = (0..=q.e)
                    .map(|g| count_layer(u, v, &LayerSpec::new(g, q, 3).unwrap()).unwrap())
                    .collect();
                assert!(counts.windows(2).all(|w| w[0] >= w[1]));
                let np = count_primitive(u, v, q).unwrap();
                assert_eq!(&np % phi, BigUint::from(0u32));
            }
        }
    }
}
