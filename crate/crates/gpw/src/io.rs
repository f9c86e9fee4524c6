//! Algebra and construction file formats.
//!
//! The algebra format is line-oriented key/value text:
//!
//! ```text
//! group Z3xZ5
//! basis E11 E12 ...
//! degrees (0,0) (1,0) ...
//! unit E11            # optional
//! products
//! 0 0 -> [(0, 1)]
//! 0 1 -> [(1, 1), (2, -1/2)]
//! ```
//!
//! Product lines index the basis 0-based; omitted pairs multiply to zero.
//! Saving normalizes nothing beyond canonical rationals, so a save/load
//! round trip reproduces the structure constants bit for bit.
//!
//! Construction files describe an algebra to build instead of raw
//! constants: a `construction` header (`twisted`, `elementary` or
//! `elementary-canonical`), the group, an `H` element list, a `theta`
//! tuple and a `sigma` block of `(h1) (h2) -> rational` lines.

use crate::algebra::{GradedAlgebra, SparseProduct};
use crate::constructions::{
    elementary_canonical, elementary_matrix_grading, twisted_group_algebra, Cocycle,
    ConstructionError,
};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::scalar::Rat;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

fn parse_error(path: &str, line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        path: path.to_string(),
        line,
        message: message.into(),
    }
}

/// Splits a line into whitespace-separated fields, honoring `#` comments.
fn fields(line: &str) -> Vec<&str> {
    let line = line.split('#').next().unwrap_or("");
    line.split_whitespace().collect()
}

/// Renders an algebra in the file format.
pub fn render_algebra(alg: &GradedAlgebra) -> String {
    let mut out = String::new();
    writeln!(out, "group {}", alg.group()).unwrap();
    writeln!(out, "basis {}", alg.labels().join(" ")).unwrap();
    let degrees: Vec<String> = alg.degrees().iter().map(|d| render_element(d)).collect();
    writeln!(out, "degrees {}", degrees.join(" ")).unwrap();
    if let Some(u) = alg.unit_index() {
        writeln!(out, "unit {}", alg.label(u)).unwrap();
    }
    writeln!(out, "products").unwrap();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let row = alg.basis_product(i, j);
            if row.is_empty() {
                continue;
            }
            let entries: Vec<String> = row.iter().map(|(k, c)| format!("({k}, {c})")).collect();
            writeln!(out, "{i} {j} -> [{}]", entries.join(", ")).unwrap();
        }
    }
    out
}

fn render_element(e: &GroupElement) -> String {
    let parts: Vec<String> = e.coords().iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn save_algebra(alg: &GradedAlgebra, path: &Path) -> Result<(), IoError> {
    std::fs::write(path, render_algebra(alg)).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

/// Parses the algebra format from text. The source name is used in error
/// messages only.
pub fn parse_algebra(text: &str, source: &str) -> Result<GradedAlgebra, IoError> {
    let mut group: Option<FiniteAbelianGroup> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut degrees: Option<Vec<GroupElement>> = None;
    let mut unit_label: Option<String> = None;
    let mut products: BTreeMap<(usize, usize), SparseProduct> = BTreeMap::new();
    let mut in_products = false;

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let f = fields(raw);
        if f.is_empty() {
            continue;
        }
        if in_products {
            parse_product_line(&f, raw, source, line, &mut products)?;
            continue;
        }
        match f[0] {
            "group" => {
                if f.len() != 2 {
                    return Err(parse_error(source, line, "expected `group <literal>`"));
                }
                group = Some(
                    f[1].parse()
                        .map_err(|e| parse_error(source, line, format!("{e}")))?,
                );
            }
            "basis" => {
                labels = Some(f[1..].iter().map(|s| s.to_string()).collect());
            }
            "degrees" => {
                let g = group
                    .as_ref()
                    .ok_or_else(|| parse_error(source, line, "`group` must come first"))?;
                let parsed: Result<Vec<GroupElement>, IoError> = f[1..]
                    .iter()
                    .map(|s| {
                        GroupElement::parse(s, g)
                            .map_err(|e| parse_error(source, line, format!("{e}")))
                    })
                    .collect();
                degrees = Some(parsed?);
            }
            "unit" => {
                if f.len() != 2 {
                    return Err(parse_error(source, line, "expected `unit <label>`"));
                }
                unit_label = Some(f[1].to_string());
            }
            "products" => {
                in_products = true;
            }
            other => {
                return Err(parse_error(
                    source,
                    line,
                    format!("unknown field `{other}`"),
                ));
            }
        }
    }

    let group = group.ok_or_else(|| parse_error(source, 0, "missing `group`"))?;
    let labels = labels.ok_or_else(|| parse_error(source, 0, "missing `basis`"))?;
    let degrees = degrees.ok_or_else(|| parse_error(source, 0, "missing `degrees`"))?;
    if degrees.len() != labels.len() {
        return Err(parse_error(
            source,
            0,
            format!(
                "{} degrees for {} basis labels",
                degrees.len(),
                labels.len()
            ),
        ));
    }
    let dim = labels.len();
    for ((i, j), row) in &products {
        if *i >= dim || *j >= dim || row.iter().any(|(k, _)| *k >= dim) {
            return Err(parse_error(source, 0, "product index out of range"));
        }
    }
    let unit = match unit_label {
        None => None,
        Some(l) => Some(
            labels
                .iter()
                .position(|x| *x == l)
                .ok_or_else(|| parse_error(source, 0, format!("unknown unit label `{l}`")))?,
        ),
    };
    Ok(GradedAlgebra::new_unchecked(
        group, labels, degrees, products, unit,
    ))
}

fn parse_product_line(
    f: &[&str],
    raw: &str,
    source: &str,
    line: usize,
    products: &mut BTreeMap<(usize, usize), SparseProduct>,
) -> Result<(), IoError> {
    if f.len() < 3 || f[2] != "->" {
        return Err(parse_error(
            source,
            line,
            "expected `<i> <j> -> [(k, c), ...]`",
        ));
    }
    let i: usize = f[0]
        .parse()
        .map_err(|_| parse_error(source, line, "bad row index"))?;
    let j: usize = f[1]
        .parse()
        .map_err(|_| parse_error(source, line, "bad column index"))?;
    let rest = raw
        .split("->")
        .nth(1)
        .ok_or_else(|| parse_error(source, line, "missing entry list"))?;
    let rest = rest.split('#').next().unwrap_or("").trim();
    let inner = rest
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| parse_error(source, line, "entries must be bracketed"))?;
    let mut entries: SparseProduct = Vec::new();
    for piece in inner.split("),") {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let body = piece
            .strip_prefix('(')
            .map(|t| t.strip_suffix(')').unwrap_or(t))
            .ok_or_else(|| parse_error(source, line, "entries look like (k, c)"))?;
        let mut parts = body.splitn(2, ',');
        let k: usize = parts
            .next()
            .unwrap_or("")
            .trim()
            .parse()
            .map_err(|_| parse_error(source, line, "bad basis index"))?;
        let c: Rat = parts
            .next()
            .unwrap_or("")
            .trim()
            .parse()
            .map_err(|e| parse_error(source, line, format!("{e}")))?;
        if !c.is_zero() {
            entries.push((k, c));
        }
    }
    if products.insert((i, j), entries).is_some() {
        return Err(parse_error(
            source,
            line,
            format!("duplicate product entry for ({i}, {j})"),
        ));
    }
    Ok(())
}

pub fn load_algebra(path: &Path) -> Result<GradedAlgebra, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    let name = path.display().to_string();
    if is_construction_text(&text) {
        build_construction(&text, &name)
    } else {
        parse_algebra(&text, &name)
    }
}

fn is_construction_text(text: &str) -> bool {
    text.lines()
        .map(fields)
        .find(|f| !f.is_empty())
        .is_some_and(|f| f[0] == "construction")
}

/// Builds an algebra from a construction description.
pub fn build_construction(text: &str, source: &str) -> Result<GradedAlgebra, IoError> {
    let mut kind: Option<String> = None;
    let mut group: Option<FiniteAbelianGroup> = None;
    let mut h_elems: Vec<GroupElement> = Vec::new();
    let mut theta: Vec<GroupElement> = Vec::new();
    let mut sigma_entries: Vec<(GroupElement, GroupElement, Rat)> = Vec::new();
    let mut in_sigma = false;

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let f = fields(raw);
        if f.is_empty() {
            continue;
        }
        if in_sigma && f.len() >= 4 && f[f.len() - 2] == "->" {
            let g = group
                .as_ref()
                .ok_or_else(|| parse_error(source, line, "`group` must come first"))?;
            let a = GroupElement::parse(f[0], g)
                .map_err(|e| parse_error(source, line, format!("{e}")))?;
            let b = GroupElement::parse(f[1], g)
                .map_err(|e| parse_error(source, line, format!("{e}")))?;
            let c: Rat = f[f.len() - 1]
                .parse()
                .map_err(|e| parse_error(source, line, format!("{e}")))?;
            sigma_entries.push((a, b, c));
            continue;
        }
        in_sigma = false;
        match f[0] {
            "construction" => kind = Some(f.get(1).unwrap_or(&"").to_string()),
            "group" => {
                group = Some(
                    f[1].parse()
                        .map_err(|e| parse_error(source, line, format!("{e}")))?,
                )
            }
            "H" => {
                let g = group
                    .as_ref()
                    .ok_or_else(|| parse_error(source, line, "`group` must come first"))?;
                for s in &f[1..] {
                    h_elems.push(
                        GroupElement::parse(s, g)
                            .map_err(|e| parse_error(source, line, format!("{e}")))?,
                    );
                }
            }
            "theta" => {
                let g = group
                    .as_ref()
                    .ok_or_else(|| parse_error(source, line, "`group` must come first"))?;
                for s in &f[1..] {
                    theta.push(
                        GroupElement::parse(s, g)
                            .map_err(|e| parse_error(source, line, format!("{e}")))?,
                    );
                }
            }
            "sigma" => in_sigma = true,
            other => {
                return Err(parse_error(
                    source,
                    line,
                    format!("unknown field `{other}`"),
                ))
            }
        }
    }

    let kind = kind.ok_or_else(|| parse_error(source, 0, "missing `construction`"))?;
    let group = group.ok_or_else(|| parse_error(source, 0, "missing `group`"))?;
    let make_cocycle = |group: &FiniteAbelianGroup,
                        h_elems: &[GroupElement]|
     -> Result<Cocycle, IoError> {
        if h_elems.is_empty() {
            return Err(parse_error(source, 0, "missing `H` element list"));
        }
        if sigma_entries.is_empty() {
            // No sigma block: the trivial cocycle on the listed subgroup.
            let sub = group
                .subgroup(h_elems)
                .map_err(|e| parse_error(source, 0, format!("{e}")))?;
            return Ok(Cocycle::trivial(&sub));
        }
        let mut table = BTreeMap::new();
        for (a, b, c) in &sigma_entries {
            table.insert((a.clone(), b.clone()), c.clone());
        }
        Ok(Cocycle::new(group.clone(), h_elems.to_vec(), table)?)
    };

    let alg = match kind.as_str() {
        "twisted" => {
            let sigma = make_cocycle(&group, &h_elems)?;
            twisted_group_algebra(&sigma)?
        }
        "elementary" => {
            if theta.is_empty() {
                return Err(parse_error(source, 0, "missing `theta` tuple"));
            }
            elementary_matrix_grading(&group, theta.len(), &theta)?
        }
        "elementary-canonical" => {
            if theta.is_empty() {
                return Err(parse_error(source, 0, "missing `theta` tuple"));
            }
            let sigma = make_cocycle(&group, &h_elems)?;
            elementary_canonical(&group, theta.len(), &sigma, &theta)?
        }
        other => {
            return Err(parse_error(
                source,
                0,
                format!("unknown construction `{other}`"),
            ))
        }
    };
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{example_3_16, pauli_m2, quaternions, witness_w3};

    #[test]
    fn round_trip_is_bit_exact() {
        for alg in [pauli_m2(), quaternions(), witness_w3(), example_3_16()] {
            let text = render_algebra(&alg);
            let loaded = parse_algebra(&text, "mem").unwrap();
            assert!(loaded.validate().is_valid());
            assert_eq!(render_algebra(&loaded), text);
            assert_eq!(loaded.dim(), alg.dim());
            for i in 0..alg.dim() {
                assert_eq!(loaded.degree(i), alg.degree(i));
                for j in 0..alg.dim() {
                    assert_eq!(loaded.basis_product(i, j), alg.basis_product(i, j));
                }
            }
        }
    }

    #[test]
    fn omitted_products_are_zero() {
        let text = "group Z2\nbasis a b\ndegrees (0) (1)\nproducts\n0 0 -> [(0, 1)]\n";
        let alg = parse_algebra(text, "mem").unwrap();
        assert!(alg.basis_product(0, 1).is_empty());
        assert!(alg.basis_product(1, 1).is_empty());
        assert_eq!(alg.basis_product(0, 0), &vec![(0, Rat::one())]);
    }

    #[test]
    fn invalid_files_carry_line_numbers() {
        let err = parse_algebra("group Q8\n", "f").unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 1, .. }));
        let err = parse_algebra(
            "group Z2\nbasis a\ndegrees (0)\nproducts\n0 -> []\n",
            "f",
        )
        .unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 5, .. }));
    }

    #[test]
    fn grading_violation_loads_but_fails_validate() {
        // b * b lands in degree (0) but claims degree (1) coordinates.
        let text = "group Z2\nbasis a b\ndegrees (0) (1)\nproducts\n1 1 -> [(1, 1)]\n";
        let alg = parse_algebra(text, "mem").unwrap();
        assert!(!alg.validate().is_valid());
    }

    #[test]
    fn construction_files() {
        let text = "construction twisted\ngroup Z2xZ2\nH (0,0) (1,0) (0,1) (1,1)\nsigma\n";
        let alg = build_construction(text, "mem").unwrap();
        assert_eq!(alg.dim(), 4);
        assert!(alg.validate().is_valid());

        let text = "construction elementary\ngroup Z3xZ5\ntheta (0,0) (1,0) (0,1) (0,4)\n";
        let alg = build_construction(text, "mem").unwrap();
        assert_eq!(alg.dim(), 16);
        assert_eq!(alg.support().len(), 11);

        let text = concat!(
            "construction elementary-canonical\n",
            "group Z2xZ2\n",
            "H (0,0) (1,0)\n",
            "theta (0,0) (0,1)\n",
            "sigma\n",
            "(0,0) (0,0) -> 1\n",
            "(0,0) (1,0) -> 1\n",
            "(1,0) (0,0) -> 1\n",
            "(1,0) (1,0) -> -1\n",
        );
        let alg = build_construction(text, "mem").unwrap();
        assert_eq!(alg.dim(), 8);
        assert!(alg.canonical_meta().is_some());
        assert!(alg.validate().is_valid());
    }

    #[test]
    fn save_and_load_through_files() {
        let dir = std::env::temp_dir().join(format!("gpw-io-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("pauli.alg");
        let alg = pauli_m2();
        save_algebra(&alg, &path).unwrap();
        let loaded = load_algebra(&path).unwrap();
        assert!(loaded.validate().is_valid());
        assert_eq!(loaded.dim(), 4);
        std::fs::remove_dir_all(&dir).ok();
    }
}
