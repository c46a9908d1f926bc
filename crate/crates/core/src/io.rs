//! Text formats for ideals and matrices.
//!
//! Ideal file:
//! ```text
//! ring x,y,z over QQ
//! y^2 - x*z
//! x^3 - y*z
//! ```
//!
//! Matrix file (ring line optional when the ring is known), any number of
//! blocks, each optionally named:
//! ```text
//! ring x,y,z over QQ
//! matrix 3 2 phi2
//! -z; -x^2
//! -y; -z
//! x; y
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use crate::groebner::Ideal;
use crate::modules::PolyMatrix;
use crate::parse::{parse_poly, ParseError, ParseErrorKind};
use crate::poly::Poly;
use crate::ring::{Ring, RingRef};

fn other(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    ParseError::new(line, column, ParseErrorKind::Other(msg.into()))
}

/// Content lines with 1-based line numbers and the column of their first
/// non-blank character.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim_start();
        (!t.is_empty() && !t.starts_with('#')).then(|| (i + 1, l.len() - t.len() + 1, t.trim_end()))
    })
}

fn parse_at(text: &str, ring: &RingRef, line: usize, column: usize) -> Result<Poly, ParseError> {
    parse_poly(text, ring).map_err(|mut e| {
        if e.line == 1 {
            e.column += column - 1;
        }
        e.at_line(line)
    })
}

fn header(line: usize, column: usize, text: &str) -> Result<RingRef, ParseError> {
    Ring::parse_header(text).map_err(|e| other(line, column, e.to_string()))
}

/// Parse an ideal file: ring header, then one generator per line.
pub fn parse_ideal(text: &str) -> Result<Ideal, ParseError> {
    let mut lines = content_lines(text);
    let Some((l, c, first)) = lines.next() else {
        return Err(other(1, 1, "missing `ring` header"));
    };
    let ring = header(l, c, first)?;
    let gens = lines
        .map(|(l, c, t)| parse_at(t, &ring, l, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(&ring, gens).expect("parsed in one ring"))
}

/// Inverse of [`parse_ideal`].
pub fn ideal_to_text(ideal: &Ideal) -> String {
    let mut s = format!("{}\n", ideal.ring());
    for g in ideal.gens() {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

/// A named matrix from a matrix file.
#[derive(Clone, Debug)]
pub struct NamedMatrix {
    pub name: Option<String>,
    pub matrix: PolyMatrix,
}

/// Parse all matrix blocks. The ring comes from the file's `ring` line or,
/// failing that, from `ring`.
pub fn parse_matrices(text: &str, ring: Option<&RingRef>) -> Result<(RingRef, Vec<NamedMatrix>), ParseError> {
    let mut lines = content_lines(text).peekable();
    let ring = match lines.peek() {
        Some(&(l, c, t)) if t.starts_with("ring ") => {
            lines.next();
            header(l, c, t)?
        }
        _ => match ring {
            Some(r) => r.clone(),
            None => {
                let (l, c) = lines.peek().map_or((1, 1), |&(l, c, _)| (l, c));
                return Err(other(l, c, "missing `ring` header"));
            }
        },
    };
    let mut out = Vec::new();
    while let Some((l, c, t)) = lines.next() {
        let words: Vec<&str> = t.split_whitespace().collect();
        if words.first() != Some(&"matrix") || !(3..=4).contains(&words.len()) {
            return Err(other(l, c, "expected `matrix <rows> <cols> [name]`"));
        }
        let dim = |w: &str| w.parse::<usize>().map_err(|_| other(l, c, format!("bad dimension `{w}`")));
        let (rows, cols) = (dim(words[1])?, dim(words[2])?);
        let name = words.get(3).map(|s| s.to_string());
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let Some((rl, rc, rt)) = lines.next() else {
                return Err(other(l, c, format!("matrix has {r} of {rows} rows")));
            };
            let mut col = rc;
            let cells: Vec<&str> = if cols == 0 && rt == "-" { Vec::new() } else { rt.split(';').collect() };
            if cells.len() != cols {
                return Err(other(rl, rc, format!("expected {cols} entries, found {}", cells.len())));
            }
            for cell in cells {
                data.push(parse_at(cell, &ring, rl, col)?);
                col += cell.chars().count() + 1;
            }
        }
        let matrix = PolyMatrix::new(&ring, rows, cols, data).expect("shape checked");
        out.push(NamedMatrix { name, matrix });
    }
    Ok((ring, out))
}

/// Parse a file holding exactly one matrix.
pub fn parse_matrix(text: &str, ring: Option<&RingRef>) -> Result<PolyMatrix, ParseError> {
    let (_, mut ms) = parse_matrices(text, ring)?;
    if ms.len() != 1 {
        return Err(other(1, 1, format!("expected one matrix, found {}", ms.len())));
    }
    Ok(ms.remove(0).matrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_round_trip() {
        let text = "# curve\nring x,y,z over QQ\n\ny^2 - x*z\nx^3 - y*z\nx^2*y - z^2\n";
        let i = parse_ideal(text).unwrap();
        assert_eq!(i.gens().len(), 3);
        let again = parse_ideal(&ideal_to_text(&i)).unwrap();
        assert_eq!(again.gens(), i.gens());
    }

    #[test]
    fn ideal_errors_have_positions() {
        let e = parse_ideal("ring x,y over QQ\nx + y\nx * w\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 5));
        let e = parse_ideal("x + y\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_ideal("").is_err());
    }

    #[test]
    fn matrices_with_names() {
        let text = "ring x,y,z over QQ\nmatrix 3 2 phi2\n-z; -x^2\n-y; -z\nx; y\nmatrix 1 1\n1\n";
        let (ring, ms) = parse_matrices(text, None).unwrap();
        assert_eq!(ring.nvars(), 3);
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].name.as_deref(), Some("phi2"));
        assert_eq!(ms[0].matrix.get(0, 1).to_string(), "-x^2");
        let back = parse_matrix(&format!("{ring}\n{}", ms[0].matrix.to_text()), None).unwrap();
        assert_eq!(back, ms[0].matrix);
    }

    #[test]
    fn matrix_errors() {
        let ring = Ring::rational(&["x", "y"]);
        let e = parse_matrix("matrix 1 2\nx; y; x\n", Some(&ring)).unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_matrix("matrix 1 2\nx;  q\n", Some(&ring)).unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        assert!(parse_matrix("matrix 2 1\nx\n", Some(&ring)).is_err());
        assert!(parse_matrix("matrix 1 1\nx\n", None).is_err());
    }
}
