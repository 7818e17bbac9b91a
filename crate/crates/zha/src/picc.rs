//! Piccs: partitions of a discrete interval into contiguous classes.
//!
//! A picc on `{0..n}` is encoded by its cut positions: cut `i` separates
//! `i-1` from `i`. The text form lists every digit in order with `|` at each
//! cut, e.g. `0|123|45`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::parse_digit_string;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Picc {
    n: usize,
    cuts: BTreeSet<usize>,
}

impl Picc {
    pub fn new(n: usize, cuts: impl IntoIterator<Item = usize>) -> Result<Picc> {
        let cuts: BTreeSet<usize> = cuts.into_iter().collect();
        if let Some(&c) = cuts.iter().find(|&&c| c == 0 || c > n) {
            return Err(Error::Range(format!("cut {c} outside 1..={n}")));
        }
        Ok(Picc { n, cuts })
    }

    /// The identity picc `0|1|...|n` (all cuts, singleton classes).
    pub fn identity(n: usize) -> Picc {
        Picc {
            n,
            cuts: (1..=n).collect(),
        }
    }

    /// The single-class picc `01...n` (no cuts).
    pub fn single_class(n: usize) -> Picc {
        Picc {
            n,
            cuts: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cuts(&self) -> &BTreeSet<usize> {
        &self.cuts
    }

    fn check(&self, a: usize) -> Result<()> {
        if a <= self.n {
            Ok(())
        } else {
            Err(Error::Range(format!("{a} outside 0..={}", self.n)))
        }
    }

    /// Whether `a` and `b` lie in the same class.
    pub fn equiv(&self, a: usize, b: usize) -> bool {
        debug_assert!(a <= self.n && b <= self.n);
        let (lo, hi) = (a.min(b), a.max(b));
        !self.cuts.iter().any(|&c| lo < c && c <= hi)
    }

    /// The class of `a` as the inclusive range `(lo, hi)`.
    pub fn class_bounds(&self, a: usize) -> (usize, usize) {
        debug_assert!(a <= self.n);
        let lo = self.cuts.range(..=a).next_back().copied().unwrap_or(0);
        let hi = self.cuts.range(a + 1..).next().map(|&c| c - 1).unwrap_or(self.n);
        (lo, hi)
    }

    /// The class of `a` as a list.
    pub fn class(&self, a: usize) -> Result<Vec<usize>> {
        self.check(a)?;
        let (lo, hi) = self.class_bounds(a);
        Ok((lo..=hi).collect())
    }

    /// `a^P`: the top of `a`'s class.
    pub fn top(&self, a: usize) -> Result<usize> {
        self.check(a)?;
        Ok(self.class_bounds(a).1)
    }

    /// Order of the picc lattice: pointwise comparison of class tops.
    pub fn leq(&self, other: &Picc) -> Result<bool> {
        self.same_size(other)?;
        Ok((0..=self.n).all(|a| self.class_bounds(a).1 <= other.class_bounds(a).1))
    }

    /// The equivalent cut-set characterization of the order: `p <= q` iff
    /// `p` has all the cuts of `q`.
    pub fn leq_by_cuts(&self, other: &Picc) -> Result<bool> {
        self.same_size(other)?;
        Ok(other.cuts.is_subset(&self.cuts))
    }

    /// Lattice meet: union of cuts.
    pub fn meet(&self, other: &Picc) -> Result<Picc> {
        self.same_size(other)?;
        Ok(Picc {
            n: self.n,
            cuts: self.cuts.union(&other.cuts).copied().collect(),
        })
    }

    /// Lattice join: intersection of cuts.
    pub fn join(&self, other: &Picc) -> Result<Picc> {
        self.same_size(other)?;
        Ok(Picc {
            n: self.n,
            cuts: self.cuts.intersection(&other.cuts).copied().collect(),
        })
    }

    fn same_size(&self, other: &Picc) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "piccs on 0..={} and 0..={} do not mix",
                self.n, other.n
            )))
        }
    }

    /// Text form `0|123|45`; digits above 9 are written `[k]`.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for a in 0..=self.n {
            if a > 0 && self.cuts.contains(&a) {
                out.push('|');
            }
            if a <= 9 {
                out.push_str(&a.to_string());
            } else {
                out.push_str(&format!("[{a}]"));
            }
        }
        out
    }

    /// Display form with directional cut glyphs. Left piccs render descending
    /// with `/`, right piccs ascending with `\`.
    pub fn display(&self, descending: bool) -> String {
        let glyph = if descending { '/' } else { '\\' };
        let mut out = String::new();
        if descending {
            for a in (0..=self.n).rev() {
                out.push_str(&a.to_string());
                if a > 0 && self.cuts.contains(&a) {
                    out.push(glyph);
                }
            }
        } else {
            for a in 0..=self.n {
                if a > 0 && self.cuts.contains(&a) {
                    out.push(glyph);
                }
                out.push_str(&a.to_string());
            }
        }
        out
    }
}

impl fmt::Display for Picc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Parses the `0|123|45` text form. Digits must appear exactly once each, in
/// order, starting at 0; anything else is a parse error. This is how
/// non-contiguous partitions are rejected: they have no legal text form.
pub fn parse_picc(text: &str) -> Result<Picc> {
    let mut cuts = BTreeSet::new();
    let mut next = 0usize;
    for chunk in text.split('|') {
        if chunk.is_empty() {
            return Err(Error::Parse(format!("empty class in `{text}`")));
        }
        if next > 0 {
            cuts.insert(next);
        }
        for d in parse_digit_string(chunk)? {
            if d != next {
                return Err(Error::Parse(format!(
                    "expected digit {next}, found {d} in `{text}`"
                )));
            }
            next += 1;
        }
    }
    if next == 0 {
        return Err(Error::Parse("empty picc".into()));
    }
    Ok(Picc {
        n: next - 1,
        cuts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let p = parse_picc("0|123|45").unwrap();
        assert_eq!(p.n(), 5);
        assert_eq!(p.cuts().iter().copied().collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(parse_picc("012345").unwrap().cuts().len(), 0);
        assert_eq!(
            parse_picc("0|1|2|3").unwrap(),
            Picc::identity(3)
        );
    }

    #[test]
    fn parse_rejects_non_piccs() {
        // out-of-order digits: the partition {{0},{1,2,4,5},{3}} has no legal form
        assert!(parse_picc("0|1245|3").is_err());
        assert!(parse_picc("0|12|2").is_err());
        assert!(parse_picc("1|23").is_err());
        assert!(parse_picc("").is_err());
        assert!(parse_picc("0||1").is_err());
    }

    #[test]
    fn class_tops() {
        let left = parse_picc("0|1234").unwrap();
        assert_eq!(left.top(2).unwrap(), 4);
        assert_eq!(left.class(2).unwrap(), vec![1, 2, 3, 4]);
        let right = parse_picc("0123|45|6").unwrap();
        assert_eq!(right.top(2).unwrap(), 4 - 1); // class {0,1,2,3}
        assert_eq!(right.top(4).unwrap(), 5);
        assert!(left.top(9).is_err());
        assert_eq!(Picc::identity(6).top(3).unwrap(), 3);
        assert_eq!(Picc::single_class(6).top(0).unwrap(), 6);
    }

    #[test]
    fn lattice_structure() {
        let p = parse_picc("0|123|45").unwrap();
        let top = parse_picc("012345").unwrap();
        let bot = Picc::identity(5);
        assert!(p.leq(&top).unwrap());
        assert!(bot.leq(&p).unwrap());
        assert_eq!(p.meet(&p).unwrap(), p);
        assert_eq!(p.join(&top).unwrap(), top);
        assert_eq!(p.meet(&bot).unwrap(), bot);
        // the two order characterizations agree
        for x in [&p, &top, &bot] {
            for y in [&p, &top, &bot] {
                assert_eq!(x.leq(y).unwrap(), x.leq_by_cuts(y).unwrap());
            }
        }
        assert!(p.meet(&Picc::identity(3)).is_err());
    }

    #[test]
    fn text_round_trip_with_brackets() {
        let p = Picc::new(11, [1, 10]).unwrap();
        let t = p.text();
        assert_eq!(t, "0|123456789|[10][11]");
        assert_eq!(parse_picc(&t).unwrap(), p);
    }

    #[test]
    fn display_forms() {
        let left = parse_picc("0|1234").unwrap();
        let right = parse_picc("0123|45|6").unwrap();
        assert_eq!(left.display(true), "4321/0");
        assert_eq!(right.display(false), "0123\\45\\6");
    }
}
