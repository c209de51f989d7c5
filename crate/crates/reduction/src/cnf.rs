//! 3SAT formulas and DIMACS parsing.

use crate::ReductionError;

/// A CNF formula with at most three literals per clause. Literals are signed
/// 1-based variable ids, DIMACS style.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    n_vars: u32,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(n_vars: u32, clauses: Vec<Vec<i32>>) -> Result<CnfFormula, ReductionError> {
        if n_vars == 0 || clauses.is_empty() {
            return Err(ReductionError::BadFormula("need at least one variable and one clause".into()));
        }
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(ReductionError::BadFormula(format!("clause {} is empty", i + 1)));
            }
            if clause.len() > 3 {
                return Err(ReductionError::BadFormula(format!(
                    "clause {} has {} literals (max 3)",
                    i + 1,
                    clause.len()
                )));
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() > n_vars {
                    return Err(ReductionError::BadFormula(format!(
                        "clause {} has out-of-range literal {}",
                        i + 1,
                        lit
                    )));
                }
            }
        }
        Ok(CnfFormula { n_vars, clauses })
    }

    pub fn n_vars(&self) -> u32 {
        self.n_vars
    }

    pub fn n_clauses(&self) -> u32 {
        self.clauses.len() as u32
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Does clause `j` (0-based) contain the literal for variable `var`
    /// (1-based) with the given polarity?
    pub fn clause_contains(&self, j: usize, var: u32, positive: bool) -> bool {
        let lit = if positive { var as i32 } else { -(var as i32) };
        self.clauses[j].contains(&lit)
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.n_vars as usize);
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = assignment[lit.unsigned_abs() as usize - 1];
                (lit > 0) == value
            })
        })
    }

    /// All satisfying assignments by brute force. Guarded to small N.
    pub fn satisfying_assignments(&self) -> Vec<Vec<bool>> {
        assert!(self.n_vars <= 20, "brute force limited to 20 variables");
        let n = self.n_vars as usize;
        (0..1u32 << n)
            .map(|bits| (0..n).map(|i| bits >> i & 1 == 1).collect::<Vec<bool>>())
            .filter(|a| self.is_satisfied_by(a))
            .collect()
    }

    pub fn is_satisfiable(&self) -> bool {
        !self.satisfying_assignments().is_empty()
    }
}

/// Parses DIMACS CNF. Clauses must have at most three literals.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ReductionError> {
    let mut n_vars: Option<u32> = None;
    let mut declared_clauses = 0usize;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(ReductionError::Dimacs { line: ln, msg: "bad problem line".into() });
            }
            n_vars = Some(parts[2].parse().map_err(|_| ReductionError::Dimacs {
                line: ln,
                msg: "bad variable count".into(),
            })?);
            declared_clauses = parts[3].parse().map_err(|_| ReductionError::Dimacs {
                line: ln,
                msg: "bad clause count".into(),
            })?;
            continue;
        }
        if n_vars.is_none() {
            return Err(ReductionError::Dimacs { line: ln, msg: "clause before problem line".into() });
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| ReductionError::Dimacs {
                line: ln,
                msg: format!("bad literal `{tok}`"),
            })?;
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
    let n_vars = n_vars.ok_or(ReductionError::Dimacs { line: 0, msg: "missing problem line".into() })?;
    if declared_clauses != clauses.len() {
        return Err(ReductionError::Dimacs {
            line: 0,
            msg: format!("declared {declared_clauses} clauses, found {}", clauses.len()),
        });
    }
    CnfFormula::new(n_vars, clauses)
}

pub fn emit_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.n_vars(), f.n_clauses());
    for clause in f.clauses() {
        for lit in clause {
            out.push_str(&format!("{lit} "));
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let text = "c example\np cnf 2 2\n1 2 0\n-1 2 0\n";
        let f = parse_dimacs(text).unwrap();
        assert_eq!(f.n_vars(), 2);
        assert_eq!(f.n_clauses(), 2);
        let again = parse_dimacs(&emit_dimacs(&f)).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn satisfaction() {
        let f = CnfFormula::new(2, vec![vec![1, 2], vec![-1, 2]]).unwrap();
        assert!(f.is_satisfied_by(&[false, true]));
        assert!(!f.is_satisfied_by(&[true, false]));
        assert_eq!(f.satisfying_assignments().len(), 2);
    }

    #[test]
    fn rejects_wide_clause() {
        assert!(CnfFormula::new(4, vec![vec![1, 2, 3, 4]]).is_err());
    }
}
