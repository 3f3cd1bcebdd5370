//! Plain-text lattice and operator files.
//!
//! Lattice file:
//!
//! ```text
//! # M_3
//! 5
//! 0 1
//! 0 2
//! 0 3
//! 1 4
//! 2 4
//! 3 4
//! label 4 top
//! ```
//!
//! The first significant line is the element count `n`. Each following line is
//! either a cover pair `a b` (`a` is covered by `b`, 0-based) or `label i name`.
//! Blank lines and lines starting with `#` are ignored everywhere.
//!
//! Operator file: a single significant line of `n` whitespace-separated
//! integers, entry `x` being `d(x)`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::lattice::{Lattice, LatticeError, PosetSpec};
use crate::operator::{Operator, OperatorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_index(line: usize, token: &str) -> Result<usize, FormatError> {
    token.parse::<usize>().map_err(|_| {
        parse_err(
            line,
            format!("expected a nonnegative integer, found {token:?}"),
        )
    })
}

/// Parses a lattice file into its Hasse diagram without building tables.
pub fn parse_poset_spec(text: &str) -> Result<PosetSpec, FormatError> {
    let mut lines = significant_lines(text);
    let (first, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file: expected the element count"))?;
    let n = parse_index(first, header)?;
    if n == 0 {
        return Err(parse_err(first, "element count must be positive"));
    }
    let mut covers = Vec::new();
    let mut labels: Vec<Option<String>> = vec![None; n];
    for (ln, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "label" {
            if tokens.len() < 3 {
                return Err(parse_err(ln, "expected `label <index> <name>`"));
            }
            let i = parse_index(ln, tokens[1])?;
            if i >= n {
                return Err(parse_err(
                    ln,
                    format!("label index {i} out of range 0..{n}"),
                ));
            }
            labels[i] = Some(tokens[2..].join(" "));
            continue;
        }
        if tokens.len() != 2 {
            return Err(parse_err(
                ln,
                format!("expected a cover pair `a b`, found {} fields", tokens.len()),
            ));
        }
        let a = parse_index(ln, tokens[0])?;
        let b = parse_index(ln, tokens[1])?;
        for e in [a, b] {
            if e >= n {
                return Err(parse_err(ln, format!("element {e} out of range 0..{n}")));
            }
        }
        covers.push((a, b));
    }
    let mut spec = PosetSpec::new(n, covers);
    if labels.iter().any(Option::is_some) {
        spec.labels = Some(
            labels
                .into_iter()
                .enumerate()
                .map(|(i, l)| l.unwrap_or_else(|| i.to_string()))
                .collect(),
        );
    }
    Ok(spec)
}

pub fn parse_lattice(text: &str) -> Result<Lattice, FormatError> {
    let spec = parse_poset_spec(text)?;
    Ok(Lattice::from_covers(&spec)?)
}

/// Parses an operator line; when `lattice` is given the length must match.
pub fn parse_operator(text: &str, lattice: Option<&Lattice>) -> Result<Operator, FormatError> {
    let mut lines = significant_lines(text);
    let (ln, line) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file: expected one line of images"))?;
    if let Some((extra, _)) = lines.next() {
        return Err(parse_err(
            extra,
            "operator files hold a single line of images",
        ));
    }
    let image = line
        .split_whitespace()
        .map(|t| parse_index(ln, t))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(l) = lattice {
        if image.len() != l.size() {
            return Err(OperatorError::SizeMismatch {
                operator: image.len(),
                lattice: l.size(),
            }
            .into());
        }
    }
    Ok(Operator::new(image)?)
}

/// Serialises a lattice as its Hasse diagram plus labels.
pub fn format_lattice(l: &Lattice) -> String {
    let mut out = String::new();
    writeln!(out, "{}", l.size()).unwrap();
    for (a, b) in l.cover_pairs() {
        writeln!(out, "{a} {b}").unwrap();
    }
    for (i, name) in l.labels().iter().enumerate() {
        if name != &i.to_string() {
            writeln!(out, "label {i} {name}").unwrap();
        }
    }
    out
}

pub fn format_operator(d: &Operator) -> String {
    format!("{d}\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    const M3: &str = "# diamond\n5\n0 1\n0 2\n0 3\n\n1 4\n2 4\n3 4\n";

    #[test]
    fn parses_m3() {
        let l = parse_lattice(M3).unwrap();
        assert_eq!(
            l,
            Lattice::from_covers(&PosetSpec::new(
                5,
                vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
            ))
            .unwrap()
        );
        assert!(!l.is_distributive());
        assert!(l.eq_under_relabeling(&Lattice::quasi_antichain(3).unwrap(), &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn labels_are_kept() {
        let text = "3\n0 1\n1 2\nlabel 2 top element\n";
        let l = parse_lattice(text).unwrap();
        assert_eq!(l.labels(), &["0", "1", "top element"]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_lattice("4\n0 1\n0 x\n") {
            Err(FormatError::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_lattice("# only comments\n") {
            Err(FormatError::Parse { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_lattice("3\n0 1 2\n") {
            Err(FormatError::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_lattice("4\n0 1\n0 2\n1 3\n"),
            Err(FormatError::Lattice(LatticeError::NoTop { .. }))
        ));
    }

    #[test]
    fn operator_files() {
        let m2 = Lattice::quasi_antichain(2).unwrap();
        let d = parse_operator("# Theta\n1 0 1 2\n", Some(&m2)).unwrap();
        assert_eq!(d.image(), &[1, 0, 1, 2]);
        assert!(matches!(
            parse_operator("1 0 1\n", Some(&m2)),
            Err(FormatError::Operator(OperatorError::SizeMismatch { .. }))
        ));
        assert!(matches!(
            parse_operator("1 0 1 4\n", Some(&m2)),
            Err(FormatError::Operator(OperatorError::ImageOutOfRange { .. }))
        ));
        assert!(parse_operator("1 0\n0 1\n", None).is_err());
    }

    #[test]
    fn lattice_round_trip() {
        for l in [
            Lattice::chain(5).unwrap(),
            Lattice::quasi_antichain(4).unwrap(),
            Lattice::pentagon(),
            Lattice::boolean_cube(3).unwrap(),
        ] {
            assert_eq!(parse_lattice(&format_lattice(&l)).unwrap(), l);
        }
    }
}
