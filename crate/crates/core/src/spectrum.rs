//! Closed-form spectra of `B_{n,m}`, their exact verification, and the
//! explicit eigenvector families that realize every eigenvalue.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::matrix::{crt_permutation_between, tensor_vec, Matrix, Permutation};
use crate::modular::{Modulus, PrimePower};
use crate::projective::{delta_map, theta, KPartition, PointOrder, ProjectiveSpace};
use crate::rank::{exact_nullity, family_rank};

/// Which row of the prime-power table an eigenvalue comes from: row `s` of
/// the table for `p^e`, with `s` in `1..=e+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TableRow {
    pub p: u64,
    pub e: u32,
    pub s: u32,
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:row{}",
            PrimePower {
                p: self.p,
                e: self.e
            },
            self.s
        )
    }
}

/// One unmerged table row: an eigenvalue, its multiplicity, and the
/// prime-power rows (one per factor of `m`) whose product produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumRow {
    pub lambda: BigInt,
    pub multiplicity: BigUint,
    pub provenance: Vec<TableRow>,
}

/// An eigenvalue of the merged view with every row that contributed to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedEigenvalue {
    pub lambda: BigInt,
    pub multiplicity: BigUint,
    pub sources: Vec<Vec<TableRow>>,
}

/// Claimed spectrum of `B_{n,m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    n: usize,
    m: u64,
    rows: Vec<SpectrumRow>,
}

impl SpectrumTable {
    pub fn new(n: usize, m: u64, rows: Vec<SpectrumRow>) -> Self {
        SpectrumTable { n, m, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn rows(&self) -> &[SpectrumRow] {
        &self.rows
    }

    pub fn total_multiplicity(&self) -> BigUint {
        self.rows.iter().map(|r| &r.multiplicity).sum()
    }

    /// Equal eigenvalues combined, strictly decreasing.
    pub fn merged(&self) -> Vec<MergedEigenvalue> {
        let mut by_value: BTreeMap<BigInt, MergedEigenvalue> = BTreeMap::new();
        for row in &self.rows {
            let entry = by_value
                .entry(row.lambda.clone())
                .or_insert_with(|| MergedEigenvalue {
                    lambda: row.lambda.clone(),
                    multiplicity: BigUint::zero(),
                    sources: Vec::new(),
                });
            entry.multiplicity += &row.multiplicity;
            entry.sources.push(row.provenance.clone());
        }
        by_value.into_values().rev().collect()
    }
}

impl fmt::Display for SpectrumTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .merged()
            .iter()
            .map(|e| format!("{}:{}", e.lambda, e.multiplicity))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn theta_prime_power(n: usize, p: u64, e: u32) -> BigUint {
    if e == 0 {
        // P_{n,1} has a single point; only reached through θ_{n,p^{s-2}} at
        // s = 2, which the table never asks for.
        return BigUint::one();
    }
    theta(n, &PrimePower { p, e }.modulus())
}

/// Eigenvalues of `B_{n,p^e}` with multiplicities:
/// - row 1: `p^{2(e-1)(n-2)}·θ_{n-1,p}^2`, multiplicity 1;
/// - row 2: `p^{(2e-1)(n-2)}`, multiplicity `θ_{n,p} - 1`;
/// - row `s` for `3 <= s <= e+1`: `p^{(2e+1-s)(n-2)}`, multiplicity
///   `(p^{n-1} - 1)·θ_{n,p^{s-2}}`.
pub fn spectrum_prime_power(n: usize, p: u64, e: u32) -> Result<SpectrumTable> {
    if n < 2 {
        return Err(domain(format!("n must be at least 2, got {n}")));
    }
    let pp = PrimePower::new(p, e)?;
    let nn = n as u32;
    let big_p = BigInt::from(p);
    let theta_line = BigInt::from(theta_prime_power(n - 1, p, 1));
    let tag = |s| vec![TableRow { p, e, s }];
    let mut rows = vec![
        SpectrumRow {
            lambda: big_p.pow(2 * (e - 1) * (nn - 2)) * &theta_line * &theta_line,
            multiplicity: BigUint::one(),
            provenance: tag(1),
        },
        SpectrumRow {
            lambda: big_p.pow((2 * e - 1) * (nn - 2)),
            multiplicity: theta_prime_power(n, p, 1) - 1u32,
            provenance: tag(2),
        },
    ];
    let spread = BigUint::from(p).pow(nn - 1) - 1u32;
    for s in 3..=e + 1 {
        rows.push(SpectrumRow {
            lambda: big_p.pow((2 * e + 1 - s) * (nn - 2)),
            multiplicity: &spread * theta_prime_power(n, p, s - 2),
            provenance: tag(s),
        });
    }
    Ok(SpectrumTable::new(n, pp.value(), rows))
}

/// Spectrum of `B_{n,m}` for general `m`: one row per choice of a row from
/// each prime-power factor's table, eigenvalues and multiplicities
/// multiplied.
pub fn spectrum_general(n: usize, m: &Modulus) -> Result<SpectrumTable> {
    let mut rows = vec![SpectrumRow {
        lambda: BigInt::one(),
        multiplicity: BigUint::one(),
        provenance: Vec::new(),
    }];
    for pp in m.factors() {
        let factor = spectrum_prime_power(n, pp.p, pp.e)?;
        rows = rows
            .iter()
            .flat_map(|acc| {
                factor.rows().iter().map(move |r| {
                    let mut provenance = acc.provenance.clone();
                    provenance.extend(&r.provenance);
                    SpectrumRow {
                        lambda: &acc.lambda * &r.lambda,
                        multiplicity: &acc.multiplicity * &r.multiplicity,
                        provenance,
                    }
                })
            })
            .collect();
    }
    Ok(SpectrumTable::new(n, m.value(), rows))
}

/// Per-eigenvalue line of a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    /// Decimal string, since eigenvalues can exceed 64 bits.
    pub lambda: String,
    pub claimed: u64,
    pub computed: u64,
    pub ok: bool,
}

/// Outcome of checking a claimed spectrum against a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub m: u64,
    pub theta: u64,
    pub entries: Vec<ReportEntry>,
    pub trace_ok: bool,
    pub trace_sq_ok: bool,
    pub dimension_ok: bool,
    pub all_ok: bool,
}

impl VerificationReport {
    /// Sum of the computed nullities; equals the order of the matrix exactly
    /// when the claimed eigenvalues exhaust the spectrum.
    pub fn computed_total(&self) -> u64 {
        self.entries.iter().map(|e| e.computed).sum()
    }
}

/// Checks every merged eigenvalue's multiplicity by exact nullity, and the
/// global identities `Σd = order`, `Σλd = trace(M)`, `Σλ²d = trace(M²)`.
pub fn verify_spectrum(m: &Matrix<BigInt>, table: &SpectrumTable) -> Result<VerificationReport> {
    if !m.is_square() {
        return Err(Error::Dimension("spectrum of a non-square matrix".into()));
    }
    let order = m.rows();
    let merged = table.merged();
    let mut entries = Vec::with_capacity(merged.len());
    let mut sum_d = BigUint::zero();
    let mut sum_ld = BigInt::zero();
    let mut sum_l2d = BigInt::zero();
    for eig in &merged {
        let d = BigInt::from(eig.multiplicity.clone());
        sum_d += &eig.multiplicity;
        sum_ld += &eig.lambda * &d;
        sum_l2d += &eig.lambda * &eig.lambda * &d;
        let claimed = eig.multiplicity.to_u64();
        // A multiplicity above the order is wrong without any elimination.
        let computed = if claimed.is_some_and(|c| c as usize <= order) {
            exact_nullity(m, &eig.lambda) as u64
        } else {
            0
        };
        entries.push(ReportEntry {
            lambda: eig.lambda.to_string(),
            claimed: claimed.unwrap_or(u64::MAX),
            computed,
            ok: claimed == Some(computed),
        });
    }
    let dimension_ok = sum_d == BigUint::from(order);
    let trace_ok = sum_ld == m.trace();
    let trace_sq_ok = sum_l2d == m.trace_of_square();
    let all_ok = dimension_ok && trace_ok && trace_sq_ok && entries.iter().all(|e| e.ok);
    Ok(VerificationReport {
        n: table.n(),
        m: table.m(),
        theta: order as u64,
        entries,
        trace_ok,
        trace_sq_ok,
        dimension_ok,
        all_ok,
    })
}

/// Exact check of `M·w = λ·w`.
pub fn is_eigenvector(m: &Matrix<BigInt>, w: &[BigInt], lambda: &BigInt) -> bool {
    match m.mul_vec(w) {
        Ok(mw) => w.iter().any(|x| !x.is_zero()) && mw.iter().zip(w).all(|(a, b)| *a == lambda * b),
        Err(_) => false,
    }
}

/// The all-ones vector, eigenvector for the largest eigenvalue.
pub fn eigvec_all_ones(space: &ProjectiveSpace) -> Vec<BigInt> {
    vec![BigInt::one(); space.len()]
}

/// Columns of `(I_d; -J_{1×d})` with `d = θ_{n,p} - 1`, in the order of
/// `space`: column `j` has `+1` at point `j` and `-1` at the last point.
/// Eigenvectors of `B_{n,p}` for `p^{n-2}`.
pub fn eigvec_r_d(space: &ProjectiveSpace) -> Result<Vec<Vec<BigInt>>> {
    if !space.modulus().is_prime() {
        return Err(domain(format!(
            "R_d eigenvectors need a prime modulus, got {}",
            space.m()
        )));
    }
    let l = space.len();
    Ok((0..l - 1)
        .map(|j| {
            let mut w = vec![BigInt::zero(); l];
            w[j] = BigInt::one();
            w[l - 1] = -BigInt::one();
            w
        })
        .collect())
}

/// For each class `K_a`, `a < l`, and each base point: `+1` on the point of
/// `K_a` and `-1` on the point of `K_l` over the same base point. Vectors are
/// indexed by `space`, which must hold `P_{n,p^e}` in any order.
/// Eigenvectors of `B_{n,p^e}` for `p^{e(n-2)}`.
pub fn eigvec_differences(
    partition: &KPartition,
    space: &ProjectiveSpace,
) -> Result<Vec<Vec<BigInt>>> {
    let classes = partition.classes();
    let last = classes.last().ok_or_else(|| domain("empty partition"))?;
    let mut out = Vec::with_capacity((classes.len() - 1) * last.len());
    for class in &classes[..classes.len() - 1] {
        for (u, v) in class.iter().zip(last) {
            let (iu, iv) = (lookup(space, u)?, lookup(space, v)?);
            let mut w = vec![BigInt::zero(); space.len()];
            w[iu] = BigInt::one();
            w[iv] = -BigInt::one();
            out.push(w);
        }
    }
    Ok(out)
}

fn lookup(space: &ProjectiveSpace, p: &crate::projective::Point) -> Result<usize> {
    space
        .index_of(p)
        .ok_or_else(|| domain(format!("{p} is not a point of the target space")))
}

/// Extends a vector over `P_{n,p^{e-1}}` to `P_{n,p^e}` by giving every point
/// the value at its image under `δ`. Lifts an eigenvector for `μ` of
/// `B_{n,p^{e-1}}` to one for `p^{2n-4}·μ` of `B_{n,p^e}`.
pub fn eigvec_lift(
    base_vec: &[BigInt],
    base: &ProjectiveSpace,
    target: &ProjectiveSpace,
) -> Result<Vec<BigInt>> {
    let pp = target
        .modulus()
        .as_prime_power()
        .filter(|pp| pp.e >= 2)
        .ok_or_else(|| domain("lifting needs a target modulus p^e with e >= 2"))?;
    if base.m() != pp.lower() || base.n() != target.n() {
        return Err(domain(format!(
            "base space P_{{{},{}}} does not sit under P_{{{},{}}}",
            base.n(),
            base.m(),
            target.n(),
            target.m()
        )));
    }
    if base_vec.len() != base.len() {
        return Err(Error::Dimension(format!(
            "base vector has length {}, base space has {} points",
            base_vec.len(),
            base.len()
        )));
    }
    target
        .points()
        .iter()
        .map(|x| {
            let image = delta_map(x, pp.p, pp.e)?;
            Ok(base_vec[lookup(base, &image)?].clone())
        })
        .collect()
}

/// Kronecker product of one vector per factor, moved to `P_{n,m}` order by
/// `perm` (as built by [`crate::matrix::crt_permutation_multi`]).
pub fn eigvec_tensor(vecs: &[Vec<BigInt>], perm: &Permutation) -> Result<Vec<BigInt>> {
    let kron = vecs
        .iter()
        .fold(vec![BigInt::one()], |acc, v| tensor_vec(&acc, v));
    perm.permute_vec(&kron)
}

/// A set of eigenvectors sharing one eigenvalue, with the table rows it
/// realizes.
#[derive(Debug, Clone)]
pub struct EigenFamily {
    pub lambda: BigInt,
    pub provenance: Vec<TableRow>,
    pub vectors: Vec<Vec<BigInt>>,
}

/// Eigenvector families for every row of the table of `B_{n,p^e}`, indexed
/// by `space` (any ordering of `P_{n,p^e}`): all-ones and `R_d` at `e = 1`,
/// then lifts of the level below plus the difference vectors.
pub fn prime_power_families(space: &ProjectiveSpace, guardrail: usize) -> Result<Vec<EigenFamily>> {
    let pp = space
        .modulus()
        .as_prime_power()
        .ok_or_else(|| domain("prime-power families need m = p^e"))?;
    let (p, e, n) = (pp.p, pp.e, space.n());
    let nn = n as u32;
    let tag = |s| vec![TableRow { p, e, s }];
    let table = spectrum_prime_power(n, p, e)?;
    if e == 1 {
        let ones = eigvec_all_ones(space);
        return Ok(vec![
            EigenFamily {
                lambda: table.rows()[0].lambda.clone(),
                provenance: tag(1),
                vectors: vec![ones],
            },
            EigenFamily {
                lambda: table.rows()[1].lambda.clone(),
                provenance: tag(2),
                vectors: eigvec_r_d(space)?,
            },
        ]);
    }
    let partition = KPartition::build(p, e, n, guardrail)?;
    let base = partition.base();
    let scale = BigInt::from(p).pow(2 * nn - 4);
    let mut families = Vec::new();
    for fam in prime_power_families(base, guardrail)? {
        let s = fam.provenance[0].s;
        families.push(EigenFamily {
            lambda: &fam.lambda * &scale,
            provenance: tag(s),
            vectors: fam
                .vectors
                .iter()
                .map(|v| eigvec_lift(v, base, space))
                .collect::<Result<_>>()?,
        });
    }
    families.push(EigenFamily {
        lambda: BigInt::from(p).pow(e * (nn - 2)),
        provenance: tag(e + 1),
        vectors: eigvec_differences(&partition, space)?,
    });
    Ok(families)
}

/// Eigenvector families of `B_{n,m}` in the lex order of `P_{n,m}`: tensor
/// products of one prime-power family vector per factor.
pub fn general_families(n: usize, m: &Modulus, guardrail: usize) -> Result<Vec<EigenFamily>> {
    let target = ProjectiveSpace::enumerate(n, m, PointOrder::Lex, guardrail)?;
    let factor_spaces = m
        .factors()
        .iter()
        .map(|pp| ProjectiveSpace::enumerate(n, &pp.modulus(), PointOrder::Lex, guardrail))
        .collect::<Result<Vec<_>>>()?;
    if factor_spaces.len() == 1 {
        return prime_power_families(&target, guardrail);
    }
    let perm = crt_permutation_between(&factor_spaces, &target)?;
    let per_factor = factor_spaces
        .iter()
        .map(|s| prime_power_families(s, guardrail))
        .collect::<Result<Vec<_>>>()?;
    let mut combos: Vec<Vec<&EigenFamily>> = vec![Vec::new()];
    for fams in &per_factor {
        combos = combos
            .iter()
            .flat_map(|c| {
                fams.iter().map(move |f| {
                    let mut c = c.clone();
                    c.push(f);
                    c
                })
            })
            .collect();
    }
    combos
        .into_iter()
        .map(|combo| {
            let lambda = combo.iter().fold(BigInt::one(), |acc, f| acc * &f.lambda);
            let provenance = combo.iter().flat_map(|f| f.provenance.clone()).collect();
            let mut vectors = Vec::new();
            let mut pick = vec![0usize; combo.len()];
            'outer: loop {
                let parts: Vec<Vec<BigInt>> = combo
                    .iter()
                    .zip(&pick)
                    .map(|(f, &i)| f.vectors[i].clone())
                    .collect();
                vectors.push(eigvec_tensor(&parts, &perm)?);
                for (i, f) in pick.iter_mut().zip(&combo).rev() {
                    *i += 1;
                    if *i < f.vectors.len() {
                        continue 'outer;
                    }
                    *i = 0;
                }
                break;
            }
            Ok(EigenFamily {
                lambda,
                provenance,
                vectors,
            })
        })
        .collect()
}

/// Summary of checking a set of eigenvector families against a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCheck {
    /// Every vector satisfies its eigen-equation exactly.
    pub residuals_zero: bool,
    /// `(λ, rank of all vectors for λ)`, decreasing in `λ`.
    pub ranks: Vec<(BigInt, usize)>,
    /// Rank of the union of all families.
    pub total_rank: usize,
}

pub fn check_families(m: &Matrix<BigInt>, families: &[EigenFamily]) -> FamilyCheck {
    let len = m.rows();
    let residuals_zero = families
        .iter()
        .all(|f| f.vectors.iter().all(|v| is_eigenvector(m, v, &f.lambda)));
    let mut by_lambda: BTreeMap<BigInt, Vec<Vec<BigInt>>> = BTreeMap::new();
    for f in families {
        by_lambda
            .entry(f.lambda.clone())
            .or_default()
            .extend(f.vectors.iter().cloned());
    }
    let ranks = by_lambda
        .iter()
        .rev()
        .map(|(l, vs)| (l.clone(), family_rank(len, vs)))
        .collect();
    let all: Vec<Vec<BigInt>> = families
        .iter()
        .flat_map(|f| f.vectors.iter().cloned())
        .collect();
    FamilyCheck {
        residuals_zero,
        ranks,
        total_rank: family_rank(len, &all),
    }
}
