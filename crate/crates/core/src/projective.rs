//! Points of the projective space `P_{n,m}` over `Z_m`: primitive tuples up
//! to multiplication by a unit, each class stored as the lexicographically
//! smallest member of its orbit.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{domain, Error, Result};
use crate::modular::{euler_phi, gcd_all, units, Modulus, PrimePower};

/// Default cap on the number of points a space may have before we refuse to
/// build it.
pub const DEFAULT_GUARDRAIL: usize = 5000;

/// Cap on the number of raw tuples a brute-force scan may visit.
pub const SCAN_LIMIT: u64 = 50_000_000;

/// Canonical representative of a point of `P_{n,m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<u64>,
    modulus: u64,
}

impl Point {
    /// Wraps coordinates that are already canonical. Used internally after
    /// canonicalization; see [`canonical_rep`] for the checked constructor.
    pub(crate) fn from_canonical(coords: Vec<u64>, modulus: u64) -> Self {
        Point { coords, modulus }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `<self, other> mod m`.
    pub fn inner(&self, other: &Point) -> u64 {
        inner_mod(&self.coords, &other.coords, self.modulus)
    }

    /// Label used in listings: a digit string when every coordinate is a
    /// single digit (`m <= 10`), otherwise a comma-joined tuple.
    pub fn label(&self) -> String {
        if self.modulus <= 10 {
            self.coords.iter().map(|c| c.to_string()).collect()
        } else {
            self.coords
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

pub(crate) fn inner_mod(u: &[u64], v: &[u64], m: u64) -> u64 {
    let m128 = m as u128;
    (u.iter()
        .zip(v)
        .map(|(&a, &b)| (a as u128) * (b as u128) % m128)
        .sum::<u128>()
        % m128) as u64
}

pub fn is_primitive(coords: &[u64], m: u64) -> bool {
    gcd_all(coords.iter().copied(), m) == 1
}

/// Lexicographically smallest element of `{λ·coords mod m : λ unit}`.
pub fn canonical_rep(coords: &[u64], m: u64) -> Result<Point> {
    if m < 2 {
        return Err(domain(format!("modulus must be at least 2, got {m}")));
    }
    if coords.len() < 2 {
        return Err(domain("points need at least two coordinates"));
    }
    let reduced: Vec<u64> = coords.iter().map(|c| c % m).collect();
    if !is_primitive(&reduced, m) {
        return Err(domain(format!("{reduced:?} is not primitive modulo {m}")));
    }
    Ok(canonicalize_with(&units(m), &reduced, m))
}

/// Canonicalizes a reduced primitive tuple given the unit group of `Z_m`.
pub(crate) fn canonicalize_with(unit_group: &[u64], coords: &[u64], m: u64) -> Point {
    let mut best = coords.to_vec();
    let mut scratch = vec![0u64; coords.len()];
    for &lambda in unit_group {
        for (s, &c) in scratch.iter_mut().zip(coords) {
            *s = mul_mod(lambda, c, m);
        }
        if scratch < best {
            best.copy_from_slice(&scratch);
        }
    }
    Point::from_canonical(best, m)
}

/// True when no unit multiple of `coords` is lexicographically smaller.
fn is_canonical_with(unit_group: &[u64], coords: &[u64], m: u64) -> bool {
    for &lambda in unit_group {
        for &c in coords {
            let scaled = mul_mod(lambda, c, m);
            if scaled != c {
                if scaled < c {
                    return false;
                }
                break;
            }
        }
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `θ_{n,m} = m^{n-1} ∏_{p | m} (1 + 1/p + ... + 1/p^{n-1})`, the number of
/// points of `P_{n,m}`. Also defined for `n = 1`, where it is 1.
pub fn theta(n: usize, m: &Modulus) -> BigUint {
    assert!(n >= 1, "theta needs n >= 1");
    let mut acc = BigUint::one();
    for pp in m.factors() {
        let p = BigUint::from(pp.p);
        // p^{(e-1)(n-1)} · (p^n - 1)/(p - 1)
        let geometric = (p.pow(n as u32) - 1u32) / (&p - 1u32);
        acc *= p.pow((pp.e - 1) * (n as u32 - 1)) * geometric;
    }
    acc
}

/// [`theta`] as a `usize`, or a size error when it exceeds `guardrail`.
pub fn theta_within(n: usize, m: &Modulus, guardrail: usize) -> Result<usize> {
    let t = theta(n, m);
    match t.to_usize() {
        Some(v) if v <= guardrail => Ok(v),
        _ => Err(Error::Size {
            what: "theta",
            value: t.to_string(),
            limit: guardrail.to_string(),
        }),
    }
}

/// Row/column ordering of a [`ProjectiveSpace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PointOrder {
    /// Lexicographic on canonical representatives.
    #[default]
    Lex,
    /// Classes `K_1, ..., K_l` of the K-partition concatenated, each class
    /// listed in the lex order of the base points it lies over. Only defined
    /// for `m = p^e` with `e >= 2`.
    KGrouped,
}

impl fmt::Display for PointOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointOrder::Lex => "lex",
            PointOrder::KGrouped => "k-grouped",
        })
    }
}

impl std::str::FromStr for PointOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(PointOrder::Lex),
            "k-grouped" | "kgrouped" => Ok(PointOrder::KGrouped),
            other => Err(domain(format!("unknown ordering {other:?}"))),
        }
    }
}

/// All points of `P_{n,m}` in a fixed order, with reverse lookup.
#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    n: usize,
    modulus: Modulus,
    order: PointOrder,
    points: Vec<Point>,
    index: HashMap<Vec<u64>, usize>,
    unit_group: Vec<u64>,
}

impl ProjectiveSpace {
    /// Enumerates `P_{n,m}` by scanning `Z_m^n` and keeping the tuples that
    /// are primitive and canonical.
    pub fn enumerate(n: usize, m: &Modulus, order: PointOrder, guardrail: usize) -> Result<Self> {
        if n < 2 {
            return Err(domain(format!("dimension n must be at least 2, got {n}")));
        }
        let expected = theta_within(n, m, guardrail)?;
        match order {
            PointOrder::Lex => {
                let points = scan_canonical(n, m.value())?;
                if points.len() != expected {
                    return Err(Error::Invariant(format!(
                        "enumerated {} points of P_{{{n},{m}}}, expected {expected}",
                        points.len()
                    )));
                }
                Ok(Self::from_points(n, m.clone(), order, points))
            }
            PointOrder::KGrouped => {
                let pp = k_grouped_prime_power(m)?;
                let partition = KPartition::build(pp.p, pp.e, n, guardrail)?;
                Ok(partition.grouped_space())
            }
        }
    }

    pub fn lex(n: usize, m: u64, guardrail: usize) -> Result<Self> {
        Self::enumerate(n, &Modulus::new(m)?, PointOrder::Lex, guardrail)
    }

    fn from_points(n: usize, modulus: Modulus, order: PointOrder, points: Vec<Point>) -> Self {
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.coords.clone(), i))
            .collect();
        let unit_group = units(modulus.value());
        ProjectiveSpace {
            n,
            modulus,
            order,
            points,
            index,
            unit_group,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn m(&self) -> u64 {
        self.modulus.value()
    }

    pub fn order(&self) -> PointOrder {
        self.order
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn units(&self) -> &[u64] {
        &self.unit_group
    }

    /// Position of a canonical point.
    pub fn index_of(&self, p: &Point) -> Option<usize> {
        if p.modulus != self.m() {
            return None;
        }
        self.index.get(&p.coords).copied()
    }

    /// Position of the class of an arbitrary primitive tuple.
    pub fn index_of_tuple(&self, coords: &[u64]) -> Result<usize> {
        let p = self.canonicalize(coords)?;
        self.index_of(&p).ok_or_else(|| {
            Error::Invariant(format!("{p} missing from P_{{{},{}}}", self.n, self.m()))
        })
    }

    /// Class of a tuple, using this space's cached unit group.
    pub fn canonicalize(&self, coords: &[u64]) -> Result<Point> {
        let m = self.m();
        if coords.len() != self.n {
            return Err(domain(format!(
                "expected {} coordinates, got {}",
                self.n,
                coords.len()
            )));
        }
        let reduced: Vec<u64> = coords.iter().map(|c| c % m).collect();
        if !is_primitive(&reduced, m) {
            return Err(domain(format!("{reduced:?} is not primitive modulo {m}")));
        }
        Ok(canonicalize_with(&self.unit_group, &reduced, m))
    }

    /// Same points, re-sorted lexicographically.
    pub fn to_lex(&self) -> ProjectiveSpace {
        let mut points = self.points.clone();
        points.sort();
        Self::from_points(self.n, self.modulus.clone(), PointOrder::Lex, points)
    }

    /// CSV listing: header `index,x1,...,xn`, then one row per point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index");
        for i in 1..=self.n {
            out.push_str(&format!(",x{i}"));
        }
        out.push('\n');
        for (i, p) in self.points.iter().enumerate() {
            out.push_str(&i.to_string());
            for c in &p.coords {
                out.push(',');
                out.push_str(&c.to_string());
            }
            out.push('\n');
        }
        out
    }
}

fn k_grouped_prime_power(m: &Modulus) -> Result<PrimePower> {
    match m.as_prime_power() {
        Some(pp) if pp.e >= 2 => Ok(pp),
        _ => Err(Error::Unsupported(format!(
            "k-grouped ordering needs a modulus p^e with e >= 2, got {m}"
        ))),
    }
}

fn scan_canonical(n: usize, m: u64) -> Result<Vec<Point>> {
    let total = (m as u128).pow(n as u32);
    if total > SCAN_LIMIT as u128 {
        return Err(Error::Size {
            what: "tuple scan",
            value: total.to_string(),
            limit: SCAN_LIMIT.to_string(),
        });
    }
    let unit_group = units(m);
    let mut points = Vec::new();
    let mut tuple = vec![0u64; n];
    loop {
        if is_primitive(&tuple, m) && is_canonical_with(&unit_group, &tuple, m) {
            points.push(Point::from_canonical(tuple.clone(), m));
        }
        if !advance(&mut tuple, m) {
            break;
        }
    }
    Ok(points)
}

/// Steps `tuple` to its lexicographic successor in `Z_m^n`; false on wrap.
pub(crate) fn advance(tuple: &mut [u64], m: u64) -> bool {
    for c in tuple.iter_mut().rev() {
        *c += 1;
        if *c < m {
            return true;
        }
        *c = 0;
    }
    false
}

/// `N(u)`: every point `v` with `<u, v> ≡ 0`.
pub fn neighborhood(u: &Point, space: &ProjectiveSpace) -> Result<Vec<Point>> {
    if space.index_of(u).is_none() {
        return Err(domain(format!(
            "{u} is not a point of P_{{{},{}}}",
            space.n(),
            space.m()
        )));
    }
    Ok(space
        .points()
        .iter()
        .filter(|v| u.inner(v) == 0)
        .cloned()
        .collect())
}

fn check_lifting(u_modulus: u64, p: u64, e: u32) -> Result<PrimePower> {
    if e < 2 {
        return Err(domain(format!("reduction needs e >= 2, got e = {e}")));
    }
    let pp = PrimePower::new(p, e)?;
    if u_modulus != pp.value() {
        return Err(domain(format!(
            "point lives modulo {u_modulus}, expected {}",
            pp.value()
        )));
    }
    Ok(pp)
}

/// `δ`: the class of the coordinatewise reduction modulo `p^{e-1}`.
pub fn delta_map(u: &Point, p: u64, e: u32) -> Result<Point> {
    let pp = check_lifting(u.modulus(), p, e)?;
    let low = pp.lower();
    let reduced: Vec<u64> = u.coords().iter().map(|c| c % low).collect();
    canonical_rep(&reduced, low)
}

/// Every primitive tuple of `Z_{p^e}^n` whose reduction modulo `p^{e-1}` lies
/// in the class `v`: the tuples `λ·v + p^{e-1}·γ` for units `λ` of
/// `Z_{p^{e-1}}` and `γ ∈ Z_p^n`.
fn rho_preimage(v: &Point, pp: PrimePower) -> Vec<Vec<u64>> {
    let low = pp.lower();
    let high = pp.value();
    let n = v.dim();
    let mut out = Vec::new();
    for lambda in units(low) {
        let base: Vec<u64> = v
            .coords()
            .iter()
            .map(|&c| mul_mod(lambda, c, low))
            .collect();
        let mut gamma = vec![0u64; n];
        loop {
            out.push(
                base.iter()
                    .zip(&gamma)
                    .map(|(&b, &g)| (b + g * low) % high)
                    .collect(),
            );
            if !advance(&mut gamma, pp.p) {
                break;
            }
        }
    }
    out
}

fn check_base_point(v: &Point, p: u64, e: u32, n: usize) -> Result<PrimePower> {
    if e < 2 {
        return Err(domain(format!("fibers need e >= 2, got e = {e}")));
    }
    let pp = PrimePower::new(p, e)?;
    if v.modulus() != pp.lower() || v.dim() != n {
        return Err(domain(format!(
            "{v} is not a point of P_{{{n},{}}}",
            pp.lower()
        )));
    }
    Ok(pp)
}

/// `δ^{-1}(v)`, sorted lexicographically.
pub fn fiber(v: &Point, p: u64, e: u32, n: usize) -> Result<Vec<Point>> {
    let pp = check_base_point(v, p, e, n)?;
    let high = pp.value();
    let unit_group = units(high);
    let mut points: Vec<Point> = rho_preimage(v, pp)
        .into_iter()
        .map(|t| canonicalize_with(&unit_group, &t, high))
        .collect();
    points.sort();
    points.dedup();
    Ok(points)
}

/// `|ρ^{-1}(v)|`, counted by scanning all of `Z_{p^e}^n`.
pub fn rho_fiber_size(v: &Point, p: u64, e: u32, n: usize) -> Result<u64> {
    let pp = check_base_point(v, p, e, n)?;
    let high = pp.value();
    let low = pp.lower();
    let total = (high as u128).pow(n as u32);
    if total > SCAN_LIMIT as u128 {
        return Err(Error::Size {
            what: "tuple scan",
            value: total.to_string(),
            limit: SCAN_LIMIT.to_string(),
        });
    }
    let low_units = units(low);
    let mut tuple = vec![0u64; n];
    let mut reduced = vec![0u64; n];
    let mut count = 0u64;
    loop {
        if is_primitive(&tuple, high) {
            for (r, &c) in reduced.iter_mut().zip(&tuple) {
                *r = c % low;
            }
            if canonicalize_with(&low_units, &reduced, low) == *v {
                count += 1;
            }
        }
        if !advance(&mut tuple, high) {
            break;
        }
    }
    Ok(count)
}

/// The expected value of [`rho_fiber_size`]: `p^n · φ(p^{e-1})`.
pub fn rho_fiber_size_formula(p: u64, e: u32, n: usize) -> Result<u64> {
    let pp = PrimePower::new(p, e)?;
    if e < 2 {
        return Err(domain("rho needs e >= 2"));
    }
    let low = PrimePower { p, e: e - 1 }.modulus();
    Ok(pp.p.pow(n as u32) * euler_phi(&low))
}

/// Split of `P_{n,p^e}` into `l = p^{n-1}` transversals `K_1..K_l` of the
/// fibers of `δ`. `K_h` takes the `h`-th smallest point of every fiber, and
/// is listed in the lex order of the base points.
#[derive(Debug, Clone)]
pub struct KPartition {
    p: u64,
    e: u32,
    n: usize,
    classes: Vec<Vec<Point>>,
    base: ProjectiveSpace,
}

impl KPartition {
    pub fn build(p: u64, e: u32, n: usize, guardrail: usize) -> Result<Self> {
        if e < 2 {
            return Err(domain(format!("K-partition needs e >= 2, got e = {e}")));
        }
        let pp = PrimePower::new(p, e)?;
        theta_within(n, &pp.modulus(), guardrail)?;
        let base_mod = PrimePower { p, e: e - 1 }.modulus();
        let base = ProjectiveSpace::enumerate(n, &base_mod, PointOrder::Lex, guardrail)?;
        let l = p.pow(n as u32 - 1) as usize;
        let mut classes = vec![Vec::with_capacity(base.len()); l];
        for v in base.points() {
            let f = fiber(v, p, e, n)?;
            if f.len() != l {
                return Err(Error::Invariant(format!(
                    "fiber over {v} has {} points, expected {l}",
                    f.len()
                )));
            }
            for (class, point) in classes.iter_mut().zip(f) {
                class.push(point);
            }
        }
        Ok(KPartition {
            p,
            e,
            n,
            classes,
            base,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[Vec<Point>] {
        &self.classes
    }

    /// Number of classes, `p^{n-1}`.
    pub fn l(&self) -> usize {
        self.classes.len()
    }

    /// `P_{n,p^{e-1}}` in lex order; position `i` of every class lies over
    /// `base().point(i)`.
    pub fn base(&self) -> &ProjectiveSpace {
        &self.base
    }

    /// `P_{n,p^e}` in k-grouped order.
    pub fn grouped_space(&self) -> ProjectiveSpace {
        let modulus = PrimePower {
            p: self.p,
            e: self.e,
        }
        .modulus();
        let points = self.classes.iter().flatten().cloned().collect();
        ProjectiveSpace::from_points(self.n, modulus, PointOrder::KGrouped, points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::factorize;
    use std::collections::HashSet;

    fn pt(coords: &[u64], m: u64) -> Point {
        canonical_rep(coords, m).unwrap()
    }

    fn labels(points: &[Point]) -> Vec<String> {
        points.iter().map(Point::label).collect()
    }

    /// Orbits of `S_{n,m}` found by brute force, without the canonical form.
    fn orbit_count_brute(n: usize, m: u64) -> usize {
        let us = units(m);
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut count = 0;
        let mut t = vec![0u64; n];
        loop {
            if is_primitive(&t, m) && !seen.contains(&t) {
                count += 1;
                for &l in &us {
                    seen.insert(t.iter().map(|&c| c * l % m).collect());
                }
            }
            if !advance(&mut t, m) {
                break;
            }
        }
        count
    }

    #[test]
    fn primitive_examples() {
        assert!(is_primitive(&[0, 0, 1], 4));
        assert!(!is_primitive(&[0, 2, 2], 4));
        assert!(is_primitive(&[2, 3], 6));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(pt(&[0, 1], 7).coords(), &[0, 1]);
        assert_eq!(pt(&[2, 3], 4).coords(), &[2, 1]);
        assert_eq!(pt(&[1, 1, 3], 4).coords(), &[1, 1, 3]);
        assert_eq!(pt(&[3, 3, 1], 4).coords(), &[1, 1, 3]);
        assert!(canonical_rep(&[0, 2, 2], 4).is_err());
    }

    #[test]
    fn theta_examples() {
        let t = |n, m| theta(n, &factorize(m).unwrap()).to_u64().unwrap();
        assert_eq!(t(3, 2), 7);
        assert_eq!(t(3, 4), 28);
        assert_eq!(orbit_count_brute(2, 6), 12);
        assert_eq!(t(2, 6), 12);
        assert_eq!(t(1, 12), 1);
        assert_eq!(t(3, 6), 91);
    }

    #[test]
    fn theta_matches_orbit_count() {
        for (n, m) in [
            (2, 2),
            (2, 9),
            (2, 12),
            (3, 2),
            (3, 4),
            (3, 6),
            (3, 8),
            (3, 9),
            (4, 4),
            (4, 6),
        ] {
            assert_eq!(
                theta(n, &factorize(m).unwrap()).to_usize().unwrap(),
                orbit_count_brute(n, m),
                "n = {n}, m = {m}"
            );
        }
    }

    #[test]
    fn enumerate_examples() {
        let s = ProjectiveSpace::lex(3, 2, DEFAULT_GUARDRAIL).unwrap();
        assert_eq!(
            labels(s.points()),
            ["001", "010", "011", "100", "101", "110", "111"]
        );
        let s = ProjectiveSpace::lex(2, 2, DEFAULT_GUARDRAIL).unwrap();
        assert_eq!(labels(s.points()), ["01", "10", "11"]);
    }

    #[test]
    fn k_grouped_matches_figure_rows() {
        let m = factorize(4).unwrap();
        let s = ProjectiveSpace::enumerate(3, &m, PointOrder::KGrouped, DEFAULT_GUARDRAIL).unwrap();
        let expected = [
            "001", "010", "011", "100", "101", "110", "111", //
            "021", "012", "013", "102", "103", "112", "113", //
            "201", "210", "211", "120", "121", "130", "131", //
            "221", "212", "213", "122", "123", "132", "133",
        ];
        assert_eq!(labels(s.points()), expected);
        assert_eq!(s.order(), PointOrder::KGrouped);
    }

    #[test]
    fn k_grouped_needs_higher_prime_power() {
        for m in [2u64, 6, 12] {
            let r =
                ProjectiveSpace::enumerate(3, &factorize(m).unwrap(), PointOrder::KGrouped, 5000);
            assert!(matches!(r, Err(Error::Unsupported(_))), "m = {m}");
        }
    }

    #[test]
    fn guardrail_fires_before_scan() {
        let r = ProjectiveSpace::lex(3, 97, 100);
        assert!(matches!(r, Err(Error::Size { what: "theta", .. })));
    }

    #[test]
    fn neighborhood_examples() {
        let s = ProjectiveSpace::lex(3, 2, DEFAULT_GUARDRAIL).unwrap();
        let nb = neighborhood(&pt(&[0, 0, 1], 2), &s).unwrap();
        assert_eq!(labels(&nb), ["010", "100", "110"]);
        let s = ProjectiveSpace::lex(2, 2, DEFAULT_GUARDRAIL).unwrap();
        assert_eq!(labels(&neighborhood(&pt(&[1, 1], 2), &s).unwrap()), ["11"]);
        let s = ProjectiveSpace::lex(3, 4, DEFAULT_GUARDRAIL).unwrap();
        for u in s.points() {
            assert_eq!(neighborhood(u, &s).unwrap().len(), 6);
        }
        assert!(neighborhood(&pt(&[0, 1], 4), &s).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_map(&pt(&[0, 2, 1], 4), 2, 2).unwrap().label(), "001");
        assert_eq!(delta_map(&pt(&[2, 2, 1], 4), 2, 2).unwrap().label(), "001");
        assert_eq!(delta_map(&pt(&[1, 0, 0], 4), 2, 2).unwrap().label(), "100");
        assert!(delta_map(&pt(&[1, 0, 0], 2), 2, 1).is_err());
    }

    #[test]
    fn fiber_examples() {
        let f = fiber(&pt(&[0, 0, 1], 2), 2, 2, 3).unwrap();
        assert_eq!(labels(&f), ["001", "021", "201", "221"]);
        assert_eq!(fiber(&pt(&[1, 1, 1], 2), 2, 2, 3).unwrap().len(), 4);
        // group P_{2,9} by δ directly
        let s = ProjectiveSpace::lex(2, 9, DEFAULT_GUARDRAIL).unwrap();
        let mut groups: HashMap<Point, Vec<Point>> = HashMap::new();
        for u in s.points() {
            groups
                .entry(delta_map(u, 3, 2).unwrap())
                .or_default()
                .push(u.clone());
        }
        assert_eq!(groups.len(), 4);
        for (v, mut members) in groups {
            members.sort();
            assert_eq!(members.len(), 3);
            assert_eq!(fiber(&v, 3, 2, 2).unwrap(), members);
        }
    }

    #[test]
    fn rho_examples() {
        let v = pt(&[0, 1, 1], 2);
        assert_eq!(rho_fiber_size(&v, 2, 2, 3).unwrap(), 8);
        assert_eq!(rho_fiber_size_formula(2, 2, 3).unwrap(), 8);
        let v = pt(&[1, 2], 3);
        assert_eq!(rho_fiber_size(&v, 3, 2, 2).unwrap(), 18);
        // fiber size × φ(p^e) = ρ-fiber size
        let f = fiber(&v, 3, 2, 2).unwrap();
        assert_eq!(f.len() as u64 * 6, 18);
    }

    #[test]
    fn k_partition_examples() {
        let kp = KPartition::build(2, 2, 3, DEFAULT_GUARDRAIL).unwrap();
        assert_eq!(kp.l(), 4);
        assert!(kp.classes().iter().all(|c| c.len() == 7));
        assert_eq!(
            labels(&kp.classes()[0]),
            ["001", "010", "011", "100", "101", "110", "111"]
        );
        let kp = KPartition::build(3, 2, 2, DEFAULT_GUARDRAIL).unwrap();
        assert_eq!(kp.l(), 3);
        assert!(kp.classes().iter().all(|c| c.len() == 4));
    }

    #[test]
    fn csv_listing() {
        let s = ProjectiveSpace::lex(2, 2, DEFAULT_GUARDRAIL).unwrap();
        assert_eq!(s.to_csv(), "index,x1,x2\n0,0,1\n1,1,0\n2,1,1\n");
    }
}
