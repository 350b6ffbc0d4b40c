//! Line-oriented algebra files.
//!
//! ```text
//! field F 3          # or: field Q
//! dim 4
//! 1 1 : 2:1          # e1 e1 = e2
//! 1 2 : 4:1
//! ```
//!
//! Indices are 1-based, unlisted products are zero and each unordered pair
//! may appear at most once.

use std::collections::HashMap;

use crate::algebra::{pair_index, Algebra};
use crate::error::{JordanError, Result};
use crate::field::FieldSpec;

fn err(line: usize, message: impl Into<String>) -> JordanError {
    JordanError::Parse { line, message: message.into() }
}

fn at_line(line: usize, e: JordanError) -> JordanError {
    match e {
        JordanError::Parse { line: 0, message } => JordanError::Parse { line, message },
        JordanError::DivisionByZero => err(line, "coefficient not defined in this field"),
        JordanError::NotPrime(p) => err(line, format!("{p} is not a prime")),
        other => other,
    }
}

fn index(line: usize, text: &str, dim: usize) -> Result<usize> {
    let i: usize = text.parse().map_err(|_| err(line, format!("bad index `{text}`")))?;
    if i == 0 || i > dim {
        return Err(JordanError::IndexOutOfRange(format!("line {line}: index {i} not in 1..={dim}")));
    }
    Ok(i - 1)
}

/// `(line, i, j, [(k, coefficient)])`, 0-based indices.
type ProductLine = (usize, usize, usize, Vec<(usize, String)>);

pub fn parse_algebra_file(text: &str) -> Result<Algebra> {
    let mut field = None;
    let mut dim = None;
    let mut products: Vec<ProductLine> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("field") {
            if field.is_some() {
                return Err(err(line_no, "repeated field header"));
            }
            field = Some(FieldSpec::parse(rest).map_err(|e| at_line(line_no, e))?);
        } else if let Some(rest) = line.strip_prefix("dim") {
            if dim.is_some() {
                return Err(err(line_no, "repeated dim header"));
            }
            dim = Some(
                rest.trim().parse::<usize>().map_err(|_| err(line_no, format!("bad dimension `{}`", rest.trim())))?,
            );
        } else {
            let (lhs, rhs) =
                line.split_once(':').ok_or_else(|| err(line_no, format!("expected `i j : k:c ...`, got `{line}`")))?;
            let idx: Vec<&str> = lhs.split_whitespace().collect();
            if idx.len() != 2 {
                return Err(err(line_no, "a product line starts with two indices"));
            }
            let d = dim.ok_or_else(|| err(line_no, "dim must precede products"))?;
            let (i, j) = (index(line_no, idx[0], d)?, index(line_no, idx[1], d)?);
            let mut terms = Vec::new();
            for t in rhs.split_whitespace() {
                let (k, c) = t.split_once(':').ok_or_else(|| err(line_no, format!("bad term `{t}`, expected k:c")))?;
                terms.push((index(line_no, k, d)?, c.to_string()));
            }
            products.push((line_no, i, j, terms));
        }
    }
    let field = field.ok_or_else(|| err(0, "missing field header"))?;
    let dim = dim.ok_or_else(|| err(0, "missing dim header"))?;
    let mut alg = Algebra::zero(field, dim);
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (line_no, i, j, terms) in products {
        if seen.insert(pair_index(i.max(j), i.min(j)), line_no).is_some() {
            return Err(JordanError::DuplicateProduct { line: line_no, i: i + 1, j: j + 1 });
        }
        let mut v = vec![field.zero(); dim];
        for (k, c) in terms {
            let c = field.parse_scalar(&c).map_err(|e| at_line(line_no, e))?;
            v[k] = &v[k] + &c;
        }
        alg.set_product(i, j, v)?;
    }
    Ok(alg)
}

/// Canonical file text: pairs `i <= j` in lexicographic order, zero
/// products omitted. `comment` lines are written first.
pub fn render_algebra_file(a: &Algebra, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    out.push_str(&format!("field {}\ndim {}\n", a.field(), a.dim()));
    for i in 0..a.dim() {
        for j in i..a.dim() {
            let v = a.basis_product(j, i);
            let terms: Vec<String> =
                v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| format!("{}:{c}", k + 1)).collect();
            if !terms.is_empty() {
                out.push_str(&format!("{} {} : {}\n", i + 1, j + 1, terms.join(" ")));
            }
        }
    }
    out
}
