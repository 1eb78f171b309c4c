//! DIMACS CNF reading and writing.

use super::{CnfFormula, Literal};
use crate::error::{Error, Result};

/// Parses a DIMACS `.cnf` document. Clauses may span lines; each ends at `0`.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        let line_no = lineno + 1;
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(Error::Parse { line: line_no, msg: format!("bad problem line {line:?}") });
            }
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })
            };
            header = Some((parse(parts[2])?, parse(parts[3])?));
            continue;
        }
        if header.is_none() {
            return Err(Error::Parse { line: line_no, msg: "clause before problem line".into() });
        }
        for tok in line.split_whitespace() {
            let lit: Literal = tok
                .parse()
                .map_err(|_| Error::Parse { line: line_no, msg: format!("bad literal {tok:?}") })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let (num_vars, num_clauses) =
        header.ok_or(Error::Parse { line: 0, msg: "missing problem line".into() })?;
    if clauses.len() != num_clauses {
        log::warn!("DIMACS header announces {num_clauses} clauses, found {}", clauses.len());
    }
    if let Some(lit) = clauses.iter().flatten().find(|l| l.unsigned_abs() as usize > num_vars) {
        return Err(Error::Parse { line: 0, msg: format!("literal {lit} exceeds {num_vars} variables") });
    }
    Ok(CnfFormula::new(num_vars, clauses))
}

pub fn write_dimacs(formula: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", formula.num_vars, formula.clauses.len());
    for clause in &formula.clauses {
        for lit in clause {
            out.push_str(&lit.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_multiline_clauses() {
        let text = "c example\np cnf 3 2\n1 -2\n0 2 3 0\n";
        let f = parse_dimacs(text).unwrap();
        assert_eq!(f.num_vars, 3);
        assert_eq!(f.clauses, vec![vec![1, -2], vec![2, 3]]);
        assert_eq!(f.occurrence_bound, 2);
        assert_eq!(parse_dimacs(&write_dimacs(&f)).unwrap(), f);
    }

    #[test]
    fn rejects_out_of_range_literal() {
        assert!(parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(parse_dimacs("1 0\n").is_err());
    }
}
