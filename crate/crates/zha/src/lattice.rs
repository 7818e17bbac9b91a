//! Planar Heyting algebras: lattices of open piles addressed by digit pairs.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::TwoColumnGraph;

/// An element of a ZHA, the digit pair `ab` standing for `pile(a,b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZhaElement {
    pub a: usize,
    pub b: usize,
}

/// Shorthand constructor; `el(2, 5)` is the pile `25`.
pub fn el(a: usize, b: usize) -> ZhaElement {
    ZhaElement { a, b }
}

impl ZhaElement {
    /// Componentwise order of the lattice. Distinct from the derived `Ord`,
    /// which is the lexicographic order used for deterministic reporting.
    pub fn leq(&self, other: &ZhaElement) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    pub fn meet(&self, other: &ZhaElement) -> ZhaElement {
        el(self.a.min(other.a), self.b.min(other.b))
    }

    pub fn join(&self, other: &ZhaElement) -> ZhaElement {
        el(self.a.max(other.a), self.b.max(other.b))
    }

    /// Token form: `25`, or `[12]5` once a digit passes 9.
    pub fn token(&self) -> String {
        let part = |d: usize| {
            if d <= 9 {
                d.to_string()
            } else {
                format!("[{d}]")
            }
        };
        format!("{}{}", part(self.a), part(self.b))
    }

    /// Parses the token form produced by [`ZhaElement::token`].
    pub fn parse(tok: &str) -> Result<ZhaElement> {
        let digits = parse_digit_string(tok)?;
        if digits.len() != 2 {
            return Err(Error::Parse(format!(
                "element token `{tok}` must have exactly two digits"
            )));
        }
        Ok(el(digits[0], digits[1]))
    }
}

impl fmt::Display for ZhaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

/// Splits a string of digits with optional `[k]` extensions: `0123`, `0|12` is
/// not handled here (no separators), `[10]2` yields `[10, 2]`.
pub(crate) fn parse_digit_string(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '0'..='9' => out.push(c as usize - '0' as usize),
            '[' => {
                let mut num = String::new();
                loop {
                    match chars.next() {
                        Some(']') => break,
                        Some(d) if d.is_ascii_digit() => num.push(d),
                        _ => return Err(Error::Parse(format!("unterminated `[` in `{s}`"))),
                    }
                }
                if num.is_empty() {
                    return Err(Error::Parse(format!("empty `[]` in `{s}`")));
                }
                out.push(num.parse().unwrap());
            }
            other => {
                return Err(Error::Parse(format!("unexpected `{other}` in `{s}`")));
            }
        }
    }
    Ok(out)
}

/// A planar Heyting algebra: digit pairs closed under componentwise min and
/// max, containing `00` and the top pair `lr`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Zha {
    l: usize,
    r: usize,
    elements: BTreeSet<ZhaElement>,
}

impl Zha {
    /// Builds a ZHA from an explicit element set, validating the lattice
    /// invariants.
    pub fn from_elements(l: usize, r: usize, elements: BTreeSet<ZhaElement>) -> Result<Zha> {
        if !elements.contains(&el(0, 0)) || !elements.contains(&el(l, r)) {
            return Err(Error::Input(
                "element set must contain 00 and the top pair".into(),
            ));
        }
        for e in &elements {
            if e.a > l || e.b > r {
                return Err(Error::Range(format!("element {e} outside the {l}x{r} box")));
            }
        }
        for x in &elements {
            for y in &elements {
                if !elements.contains(&x.meet(y)) || !elements.contains(&x.join(y)) {
                    return Err(Error::Input(format!(
                        "element set not closed under min/max at {x}, {y}"
                    )));
                }
            }
        }
        Ok(Zha { l, r, elements })
    }

    /// The full grid `[00, lr]`.
    pub fn grid(l: usize, r: usize) -> Zha {
        let elements = (0..=l)
            .flat_map(|a| (0..=r).map(move |b| el(a, b)))
            .collect();
        Zha { l, r, elements }
    }

    /// The ZHA associated to a two-column graph: all digit pairs whose pile
    /// is open.
    pub fn from_2cg(graph: &TwoColumnGraph) -> Zha {
        let l = graph.left_count();
        let r = graph.right_count();
        let elements = (0..=l)
            .flat_map(|a| (0..=r).map(move |b| (a, b)))
            .filter(|&(a, b)| graph.is_open(&graph.pile(a, b).expect("in range")))
            .map(|(a, b)| el(a, b))
            .collect();
        Zha { l, r, elements }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn elements(&self) -> impl Iterator<Item = ZhaElement> + '_ {
        self.elements.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // 00 is always present
    }

    pub fn contains(&self, e: ZhaElement) -> bool {
        self.elements.contains(&e)
    }

    pub fn check_member(&self, e: ZhaElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{e} is not in the lattice")))
        }
    }

    pub fn top(&self) -> ZhaElement {
        el(self.l, self.r)
    }

    pub fn bottom(&self) -> ZhaElement {
        el(0, 0)
    }

    /// Meet of two members. Arguments must be elements.
    pub fn meet(&self, x: ZhaElement, y: ZhaElement) -> ZhaElement {
        debug_assert!(self.contains(x) && self.contains(y));
        x.meet(&y)
    }

    /// Join of two members. Arguments must be elements.
    pub fn join(&self, x: ZhaElement, y: ZhaElement) -> ZhaElement {
        debug_assert!(self.contains(x) && self.contains(y));
        x.join(&y)
    }

    /// Heyting implication: the largest element whose meet with `x` is below
    /// `y`, found by scanning the lattice.
    pub fn imp(&self, x: ZhaElement, y: ZhaElement) -> ZhaElement {
        debug_assert!(self.contains(x) && self.contains(y));
        let mut best = self.bottom();
        for z in self.elements() {
            if z.meet(&x).leq(&y) {
                best = best.join(&z);
            }
        }
        debug_assert!(best.meet(&x).leq(&y), "implication candidate set not join-closed");
        best
    }

    pub fn neg(&self, x: ZhaElement) -> ZhaElement {
        self.imp(x, self.bottom())
    }

    /// The checked Heyting-structure view.
    pub fn heyting(&self) -> Heyting<'_> {
        Heyting { zha: self }
    }

    /// The interval `[lo, hi]` inside the lattice.
    pub fn interval(&self, lo: ZhaElement, hi: ZhaElement) -> Vec<ZhaElement> {
        self.elements()
            .filter(|e| lo.leq(e) && e.leq(&hi))
            .collect()
    }
}

/// Heyting operations with membership checking, for callers holding
/// unvalidated digit pairs.
#[derive(Debug, Clone, Copy)]
pub struct Heyting<'a> {
    zha: &'a Zha,
}

impl<'a> Heyting<'a> {
    pub fn zha(&self) -> &'a Zha {
        self.zha
    }

    fn pair(&self, x: ZhaElement, y: ZhaElement) -> Result<()> {
        self.zha.check_member(x)?;
        self.zha.check_member(y)
    }

    pub fn leq(&self, x: ZhaElement, y: ZhaElement) -> Result<bool> {
        self.pair(x, y)?;
        Ok(x.leq(&y))
    }

    pub fn meet(&self, x: ZhaElement, y: ZhaElement) -> Result<ZhaElement> {
        self.pair(x, y)?;
        Ok(self.zha.meet(x, y))
    }

    pub fn join(&self, x: ZhaElement, y: ZhaElement) -> Result<ZhaElement> {
        self.pair(x, y)?;
        Ok(self.zha.join(x, y))
    }

    pub fn imp(&self, x: ZhaElement, y: ZhaElement) -> Result<ZhaElement> {
        self.pair(x, y)?;
        Ok(self.zha.imp(x, y))
    }

    pub fn neg(&self, x: ZhaElement) -> Result<ZhaElement> {
        self.zha.check_member(x)?;
        Ok(self.zha.neg(x))
    }

    pub fn top(&self) -> ZhaElement {
        self.zha.top()
    }

    pub fn bottom(&self) -> ZhaElement {
        self.zha.bottom()
    }
}
