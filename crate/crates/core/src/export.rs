//! Text renderings of labeled matrices.

use std::fmt::Write;

use crate::matrix::Matrix;
use crate::projective::Point;
use crate::scalar::Scalar;

fn labels(points: Option<&[Point]>, count: usize) -> Vec<String> {
    match points {
        Some(pts) => pts.iter().map(Point::label).collect(),
        None => (0..count).map(|i| i.to_string()).collect(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Matrix Market dense array format: header, labels as comment lines, the
/// size line, then entries in column-major order.
pub fn to_matrix_market<T: Scalar>(m: &Matrix<T>) -> String {
    let mut out = String::from("%%MatrixMarket matrix array integer general\n");
    if let Some(rows) = m.row_labels() {
        let _ = writeln!(out, "% rows: {}", labels(Some(rows), 0).join(" "));
    }
    if let Some(cols) = m.col_labels() {
        let _ = writeln!(out, "% cols: {}", labels(Some(cols), 0).join(" "));
    }
    let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    for c in 0..m.cols() {
        for r in 0..m.rows() {
            let _ = writeln!(out, "{}", m.get(r, c));
        }
    }
    out
}

/// CSV with point labels as the header row and the first column; unlabeled
/// matrices use indices.
pub fn to_csv<T: Scalar>(m: &Matrix<T>) -> String {
    let rows = labels(m.row_labels(), m.rows());
    let cols = labels(m.col_labels(), m.cols());
    let mut out = String::from("label");
    for c in &cols {
        out.push(',');
        out.push_str(&csv_field(c));
    }
    out.push('\n');
    for (r, label) in rows.iter().enumerate() {
        out.push_str(&csv_field(label));
        for v in m.row(r) {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

/// One line per row: `(label)` followed by the entries, right-aligned to a
/// common width.
pub fn to_table<T: Scalar>(m: &Matrix<T>) -> String {
    let rows = labels(m.row_labels(), m.rows());
    let width = m
        .entries()
        .iter()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for (r, label) in rows.iter().enumerate() {
        let _ = write!(out, "({label})");
        for v in m.row(r) {
            let _ = write!(out, " {:>width$}", v.to_string());
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_a, build_b};
    use crate::projective::{ProjectiveSpace, DEFAULT_GUARDRAIL};

    #[test]
    fn matrix_market_layout() {
        let m = Matrix::from_rows(&[vec![1i64, 2], vec![3, 4]]).unwrap();
        assert_eq!(
            to_matrix_market(&m),
            "%%MatrixMarket matrix array integer general\n2 2\n1\n3\n2\n4\n"
        );
    }

    #[test]
    fn labeled_outputs() {
        let s = ProjectiveSpace::lex(2, 2, DEFAULT_GUARDRAIL).unwrap();
        let a = build_a::<i64>(&s);
        assert_eq!(to_csv(&a), "label,01,10,11\n01,0,1,0\n10,1,0,0\n11,0,0,1\n");
        assert_eq!(
            to_table(&build_b(&s)),
            "(01) 1 0 0\n(10) 0 1 0\n(11) 0 0 1\n"
        );
        assert!(to_matrix_market(&a).contains("% rows: 01 10 11\n% cols: 01 10 11\n3 3\n"));
    }

    #[test]
    fn tuple_labels_are_quoted() {
        let s = ProjectiveSpace::lex(2, 11, DEFAULT_GUARDRAIL).unwrap();
        let csv = to_csv(&build_a::<i64>(&s));
        assert!(csv.starts_with("label,\"0,1\",\"1,0\""));
    }

    #[test]
    fn table_aligns_wide_entries() {
        let m = Matrix::from_rows(&[vec![10i64, 2], vec![2, 10]]).unwrap();
        assert_eq!(to_table(&m), "(0) 10  2\n(1)  2 10\n");
    }
}
