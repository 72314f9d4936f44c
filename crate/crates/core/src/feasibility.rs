//! Divisibility screens ruling out λ-factorisations of a given index.
//!
//! An empty report means "not ruled out", never "exists".

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, ParseError, Result};
use crate::factorisation::expected_size;
use crate::partition::Partition;

/// The test that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `c (2n−1)!! / ∏(2λ_i−1)!!` is not an integer.
    ExpectedSize,
    /// `2k−1` does not divide `(2l+1)c` for parts `k ≤ l`.
    KAndL { k: usize, l: usize },
    /// The two-part index chain becomes fractional at `(n−k, k)`.
    TwoParts { k: usize },
    /// `(2,1^{n−2})` at index 1 with `n ≥ 5`.
    TwoOneOnes,
    /// The shape is in the table of known nonexistent cases.
    KnownNonexistent,
}

/// A failed test at `shape`, which is `λ` itself or a sub-multiset of its parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub shape: Partition,
    pub rule: Rule,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}): ", self.shape)?;
        match &self.rule {
            Rule::ExpectedSize => f.write_str("size is not an integer"),
            Rule::KAndL { k, l } => write!(f, "{} does not divide {}c", 2 * k - 1, 2 * l + 1),
            Rule::TwoParts { k } => write!(f, "index at ({},{}) is not an integer", self.shape.size() - k, k),
            Rule::TwoOneOnes => f.write_str("(2,1,...,1) has no index-1 factorisation"),
            Rule::KnownNonexistent => f.write_str("known not to exist"),
        }
    }
}

/// Screen with an extensible table of shapes known not to exist.
#[derive(Clone, Debug)]
pub struct Screen {
    known: Vec<(Partition, u64)>,
}

impl Default for Screen {
    fn default() -> Self {
        let p = |v: &[usize]| Partition::new(v.to_vec()).expect("valid");
        Screen {
            known: alloc::vec![(p(&[2, 2]), 1), (p(&[2, 1, 1]), 1)],
        }
    }
}

impl Screen {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a shape and index shown not to exist, e.g. by complete search.
    pub fn with_known(mut self, lambda: Partition, c: u64) -> Self {
        if !self.known.contains(&(lambda.clone(), c)) {
            self.known.push((lambda, c));
        }
        self
    }

    pub fn known(&self) -> &[(Partition, u64)] {
        &self.known
    }

    /// Runs the direct tests on `λ` and on every proper sub-multiset of its
    /// parts, since derivation carries a factorisation down to those shapes.
    pub fn run(&self, lambda: &Partition, c: u64) -> Vec<Violation> {
        let mut out = self.direct(lambda, c);
        for sub in lambda.submultisets() {
            if sub.len() >= 2 && sub != *lambda {
                out.extend(self.direct(&sub, c));
            }
        }
        out
    }

    fn direct(&self, lambda: &Partition, c: u64) -> Vec<Violation> {
        let mut out = Vec::new();
        if lambda.len() < 2 || c == 0 {
            return out;
        }
        let mut push = |rule| {
            out.push(Violation {
                shape: lambda.clone(),
                rule,
            })
        };
        if expected_size(lambda, c).is_err() {
            push(Rule::ExpectedSize);
        }
        let mults = lambda.multiplicities();
        for &(k, mk) in mults.iter().rev() {
            for &(l, _) in mults.iter().rev() {
                let distinct = if k == l { mk >= 2 } else { true };
                if k > l || !distinct {
                    continue;
                }
                let num = BigUint::from(2 * l + 1) * BigUint::from(c);
                if !num.is_multiple_of(&BigUint::from(2 * k - 1)) {
                    push(Rule::KAndL { k, l });
                }
            }
        }
        if lambda.len() == 2 {
            let n = lambda.size();
            let t = lambda.part(1);
            // c_{s-1} = c_s (2n-2s+1)/(2s-1) as an exact fraction num/den
            let mut num = BigUint::from(c);
            let mut den = BigUint::from(1u32);
            for s in (2..=t).rev() {
                num *= BigUint::from(2 * n - 2 * s + 1);
                den *= BigUint::from(2 * s - 1);
                let g = num.gcd(&den);
                num /= &g;
                den /= &g;
                if den != BigUint::from(1u32) {
                    push(Rule::TwoParts { k: s - 1 });
                    break;
                }
            }
        }
        let n = lambda.size();
        if c == 1 && n >= 5 && lambda.part(0) == 2 && lambda.parts()[1..].iter().all(|&p| p == 1) {
            push(Rule::TwoOneOnes);
        }
        if self.known.iter().any(|(s, k)| s == lambda && *k == c) {
            push(Rule::KnownNonexistent);
        }
        out
    }
}

/// [`Screen::run`] with the built-in table.
pub fn feasibility_screen(lambda: &Partition, c: u64) -> Vec<Violation> {
    Screen::default().run(lambda, c)
}

/// One term of a shape pattern: a constant part or `n − d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Term {
    Const(usize),
    NMinus(usize),
}

/// A family of shapes such as `n-4,3,1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapePattern {
    terms: Vec<Term>,
}

impl ShapePattern {
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// The shape at `n`, or `None` where the parts are not positive and weakly decreasing.
    pub fn at(&self, n: usize) -> Option<Partition> {
        let mut parts = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let v = match *t {
                Term::Const(v) => v,
                Term::NMinus(d) => n.checked_sub(d)?,
            };
            parts.push(v);
        }
        let p = Partition::new(parts).ok()?;
        (p.size() == n).then_some(p)
    }
}

impl FromStr for ShapePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |position, message| Error::Parse(ParseError { position, message });
        let mut terms = Vec::new();
        let mut pos = 0;
        for raw in s.split(',') {
            let tok: alloc::string::String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            let term = if tok == "n" {
                Term::NMinus(0)
            } else if let Some(rest) = tok.strip_prefix("n-") {
                Term::NMinus(rest.parse().map_err(|_| err(pos, "expected n-<integer>"))?)
            } else {
                let v: usize = tok
                    .parse()
                    .map_err(|_| err(pos, "expected an integer, n or n-<integer>"))?;
                if v == 0 {
                    return Err(err(pos, "parts must be positive"));
                }
                Term::Const(v)
            };
            terms.push(term);
            pos += raw.len() + 1;
        }
        if terms.is_empty() || s.trim().is_empty() {
            return Err(err(0, "empty pattern"));
        }
        Ok(ShapePattern { terms })
    }
}

/// One row of a screening table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub lambda: Partition,
    pub violations: Vec<Violation>,
}

impl TableRow {
    pub fn feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Screens the pattern at every `n` in `range` where it is a valid shape.
pub fn screen_table(pattern: &ShapePattern, range: core::ops::RangeInclusive<usize>, c: u64) -> Vec<TableRow> {
    let screen = Screen::default();
    range
        .filter_map(|n| {
            let lambda = pattern.at(n)?;
            let violations = screen.run(&lambda, c);
            Some(TableRow { n, lambda, violations })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn feasible_ns(pattern: &str, upto: usize) -> Vec<usize> {
        screen_table(&pattern.parse().unwrap(), 1..=upto, 1)
            .into_iter()
            .filter(TableRow::feasible)
            .map(|r| r.n)
            .collect()
    }

    #[test]
    fn n_minus_2_2() {
        let got = feasible_ns("n-2,2", 30);
        let want: Vec<usize> = (4..=30).filter(|n| n % 3 == 0).collect();
        assert_eq!(got, want);
        assert!(!feasibility_screen(&p(&[5, 2]), 1).is_empty());
    }

    #[test]
    fn n_minus_3_3_and_5_5() {
        let got = feasible_ns("n-3,3", 200);
        let want: Vec<usize> = (6..=200).filter(|n| n % 15 == 0 || n % 15 == 10).collect();
        assert_eq!(got, want);
        let got = feasible_ns("n-5,5", 700);
        let want: Vec<usize> = (10..=700)
            .filter(|n| [0, 36, 126, 162, 225, 252].contains(&(n % 315)))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn never_rows() {
        assert!(feasible_ns("n-4,2,2", 60).is_empty());
        assert!(feasible_ns("n-4,2,1,1", 60).is_empty());
    }

    #[test]
    fn open_cases_are_not_ruled_out() {
        assert!(feasibility_screen(&p(&[4, 2, 1]), 1).is_empty());
        assert!(feasibility_screen(&p(&[5, 1, 1]), 1).is_empty());
        assert!(feasibility_screen(&p(&[4, 2]), 1).is_empty());
        assert!(feasibility_screen(&p(&[3, 1, 1]), 1).is_empty());
    }

    #[test]
    fn rules_reported() {
        let v = feasibility_screen(&p(&[2, 2]), 1);
        assert!(v.contains(&Violation {
            shape: p(&[2, 2]),
            rule: Rule::KAndL { k: 2, l: 2 }
        }));
        assert!(v.contains(&Violation {
            shape: p(&[2, 2]),
            rule: Rule::KnownNonexistent
        }));
        let v = feasibility_screen(&p(&[2, 1, 1, 1, 1]), 1);
        assert!(v.iter().any(|x| x.rule == Rule::TwoOneOnes));
        // reached through the sub-shape (2,1,1)
        assert!(v
            .iter()
            .any(|x| x.shape == p(&[2, 1, 1]) && x.rule == Rule::KnownNonexistent));
        assert!(feasibility_screen(&p(&[6]), 1).is_empty());
    }

    #[test]
    fn pattern_parsing() {
        let pat: ShapePattern = " n-4 , 3,1".parse().unwrap();
        assert_eq!(pat.terms(), &[Term::NMinus(4), Term::Const(3), Term::Const(1)]);
        assert_eq!(pat.at(9), Some(p(&[5, 3, 1])));
        assert_eq!(pat.at(6), None);
        assert!("n-x,2".parse::<ShapePattern>().is_err());
        assert!(matches!(
            "2,k".parse::<ShapePattern>(),
            Err(Error::Parse(ParseError { position: 2, .. }))
        ));
    }
}
