use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};
use zmspec::count::{
    count_2x2, count_2x2_brute, count_layer, count_layer_brute, count_primitive,
    count_primitive_brute, LayerSpec,
};
use zmspec::export::{to_csv, to_matrix_market, to_table};
use zmspec::matrix::{
    apply_simultaneous_permutation, build_a, build_b, crt_permutation, tensor_product,
};
use zmspec::projective::canonical_rep;
use zmspec::spectrum::{spectrum_general, verify_spectrum, SpectrumTable};
use zmspec::{
    factorize, theta, Error, Matrix, Modulus, PointOrder, PrimePower, ProjectiveSpace, Result,
    Scalar,
};

use crate::{Command, Format, SpectrumFormat, Which};

/// Runs one command. `Ok(false)` means a check ran and failed.
pub fn run(command: Command, guardrail: usize) -> Result<bool> {
    match command {
        Command::Theta { n, m } => {
            let modulus = validated(n, m)?;
            println!("{}", theta(n, &modulus));
            Ok(true)
        }
        Command::Points {
            n,
            m,
            ordering,
            format,
            output,
        } => {
            let space = space(n, m, ordering.into(), guardrail)?;
            emit(&render_points(&space, format), output.as_deref())?;
            Ok(true)
        }
        Command::Matrix {
            n,
            m,
            which,
            ordering,
            format,
            output,
        } => {
            let space = space(n, m, ordering.into(), guardrail)?;
            let text = match which {
                Which::A => render_matrix(&build_a::<i64>(&space), &space, "A", format),
                Which::B => render_matrix(&build_b(&space), &space, "B", format),
            };
            emit(&text, output.as_deref())?;
            Ok(true)
        }
        Command::Spectrum {
            n,
            m,
            verify,
            format,
        } => {
            let modulus = validated(n, m)?;
            let table = spectrum_general(n, &modulus)?;
            if verify {
                let space = ProjectiveSpace::enumerate(n, &modulus, PointOrder::Lex, guardrail)?;
                let report = verify_spectrum(&build_b(&space), &table)?;
                println!("{}", to_json(&report));
                return Ok(report.all_ok);
            }
            match format {
                SpectrumFormat::Text => print!("{}", spectrum_text(&table)),
                SpectrumFormat::Json => println!("{}", spectrum_json(&table)),
            }
            Ok(true)
        }
        Command::TensorCheck { n, m1, m2 } => {
            let ok = tensor_check(n, m1, m2, guardrail)?;
            println!(
                "tensor-check n={n} m1={m1} m2={m2}: {}",
                if ok { "pass" } else { "fail" }
            );
            Ok(ok)
        }
        Command::Count {
            p,
            e,
            coeffs,
            pair,
            layer,
        } => {
            let pp = PrimePower::new(p, e)?;
            let (closed, brute) = match (coeffs, pair) {
                (Some(c), _) => (
                    BigInt::from(count_2x2(c[0], c[1], c[2], c[3], pp)),
                    count_2x2_brute(c[0], c[1], c[2], c[3], pp)?,
                ),
                (None, Some(pair)) => {
                    let u = canonical_rep(&parse_tuple(&pair[0])?, pp.value())?;
                    let v = canonical_rep(&parse_tuple(&pair[1])?, pp.value())?;
                    match layer {
                        Some(g) => {
                            let layer_spec = LayerSpec::new(g, pp, u.dim())?;
                            (
                                count_layer(&u, &v, &layer_spec)?.into(),
                                count_layer_brute(&u, &v, &layer_spec)?,
                            )
                        }
                        None => (
                            count_primitive(&u, &v, pp)?.into(),
                            count_primitive_brute(&u, &v, pp)?,
                        ),
                    }
                }
                (None, None) => return Err(Error::Domain("give --coeffs or --pair".into())),
            };
            println!("closed {closed}, brute {brute}");
            Ok(closed == BigInt::from(brute))
        }
        Command::Selftest => Ok(selftest(guardrail)),
    }
}

fn validated(n: usize, m: u64) -> Result<Modulus> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    if m < 2 {
        return Err(Error::Domain(format!("m must be at least 2, got {m}")));
    }
    factorize(m)
}

fn space(n: usize, m: u64, order: PointOrder, guardrail: usize) -> Result<ProjectiveSpace> {
    ProjectiveSpace::enumerate(n, &validated(n, m)?, order, guardrail)
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    let written = match output {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    written.map_err(|e| Error::Domain(format!("cannot write output: {e}")))
}

fn parse_tuple(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Domain(format!("bad coordinate {x:?} in {s:?}")))
        })
        .collect()
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

/// JSON number when it fits 64 bits, decimal string otherwise.
fn json_int<T: Scalar>(v: &T) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn render_points(space: &ProjectiveSpace, format: Format) -> String {
    match format {
        Format::Csv => space.to_csv(),
        Format::Json => {
            let points: Vec<Value> = space
                .points()
                .iter()
                .enumerate()
                .map(|(i, p)| json!({"index": i, "label": p.label(), "coords": p.coords()}))
                .collect();
            let doc = json!({
                "n": space.n(),
                "m": space.m(),
                "ordering": space.order().to_string(),
                "theta": space.len(),
                "points": points,
            });
            to_json(&doc) + "\n"
        }
        Format::Table | Format::Matrixmarket => space
            .points()
            .iter()
            .enumerate()
            .map(|(i, p)| format!("{i} {p}\n"))
            .collect(),
    }
}

fn render_matrix<T: Scalar>(
    m: &Matrix<T>,
    space: &ProjectiveSpace,
    which: &str,
    format: Format,
) -> String {
    match format {
        Format::Table => to_table(m),
        Format::Csv => to_csv(m),
        Format::Matrixmarket => to_matrix_market(m),
        Format::Json => {
            let rows: Vec<Vec<Value>> = (0..m.rows())
                .map(|r| m.row(r).iter().map(json_int).collect())
                .collect();
            let labels: Vec<String> = space.points().iter().map(|p| p.label()).collect();
            let doc = json!({
                "n": space.n(),
                "m": space.m(),
                "which": which,
                "ordering": space.order().to_string(),
                "labels": labels,
                "entries": rows,
            });
            to_json(&doc) + "\n"
        }
    }
}

fn sources_text(sources: &[Vec<zmspec::spectrum::TableRow>]) -> String {
    sources
        .iter()
        .map(|tags| {
            tags.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("*")
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn spectrum_text(table: &SpectrumTable) -> String {
    let mut out = format!(
        "# B_{{{},{}}}: lambda multiplicity rows\n",
        table.n(),
        table.m()
    );
    for e in table.merged() {
        out += &format!(
            "{} {} {}\n",
            e.lambda,
            e.multiplicity,
            sources_text(&e.sources)
        );
    }
    out
}

fn spectrum_json(table: &SpectrumTable) -> String {
    let entries: Vec<Value> = table
        .merged()
        .iter()
        .map(|e| {
            json!({
                "lambda": e.lambda.to_string(),
                "multiplicity": e.multiplicity.to_string(),
                "rows": sources_text(&e.sources),
            })
        })
        .collect();
    to_json(&json!({
        "n": table.n(),
        "m": table.m(),
        "theta": table.total_multiplicity().to_string(),
        "entries": entries,
    }))
}

/// Conjugates `B_{n,m1·m2}` by the CRT relabeling and compares it entrywise
/// with `B_{n,m1} ⊗ B_{n,m2}`.
pub fn tensor_check(n: usize, m1: u64, m2: u64, guardrail: usize) -> Result<bool> {
    validated(n, m1)?;
    validated(n, m2)?;
    let m = m1
        .checked_mul(m2)
        .ok_or_else(|| Error::Domain("m1·m2 overflows".into()))?;
    let perm = crt_permutation(n, m1, m2, guardrail)?;
    let b = build_b(&ProjectiveSpace::lex(n, m, guardrail)?);
    let b1 = build_b(&ProjectiveSpace::lex(n, m1, guardrail)?);
    let b2 = build_b(&ProjectiveSpace::lex(n, m2, guardrail)?);
    let lhs = apply_simultaneous_permutation(&b, &perm.inverse())?;
    Ok(lhs.same_entries(&tensor_product(&b1, &b2)))
}

fn selftest(guardrail: usize) -> bool {
    let checks: Vec<(&str, Result<bool>)> = vec![
        (
            "theta(3,4) = 28",
            validated(3, 4).map(|m| theta(3, &m) == 28u32.into()),
        ),
        (
            "theta(3,6) = 91",
            validated(3, 6).map(|m| theta(3, &m) == 91u32.into()),
        ),
        ("spectrum of B_{3,4} verifies", verify(3, 4, guardrail)),
        ("spectrum of B_{3,6} verifies", verify(3, 6, guardrail)),
        ("spectrum of B_{2,12} verifies", verify(2, 12, guardrail)),
        ("tensor (2,2,3)", tensor_check(2, 2, 3, guardrail)),
        ("tensor (3,2,3)", tensor_check(3, 2, 3, guardrail)),
        ("2x2 count exhaustive mod 8", count_exhaustive(2, 3)),
        ("2x2 count exhaustive mod 9", count_exhaustive(3, 2)),
    ];
    let mut all = true;
    for (name, outcome) in checks {
        let ok = matches!(outcome, Ok(true));
        all &= ok;
        match outcome {
            Err(e) => println!("FAIL {name}: {e}"),
            _ => println!("{} {name}", if ok { "PASS" } else { "FAIL" }),
        }
    }
    all
}

fn verify(n: usize, m: u64, guardrail: usize) -> Result<bool> {
    let modulus = validated(n, m)?;
    let space = ProjectiveSpace::enumerate(n, &modulus, PointOrder::Lex, guardrail)?;
    Ok(verify_spectrum(&build_b(&space), &spectrum_general(n, &modulus)?)?.all_ok)
}

fn count_exhaustive(p: u64, e: u32) -> Result<bool> {
    let pp = PrimePower::new(p, e)?;
    let q = pp.value() as i64;
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if count_2x2(a, b, c, d, pp) != count_2x2_brute(a, b, c, d, pp)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
