//! Two-column graphs and their order topology.
//!
//! A two-column graph has `left_count` points `L1..Ll` stacked in a column,
//! `right_count` points `R1..Rr` in another, and arrows between the columns.
//! Within a column the ordering is implicit: `La` covers `L(a-1)`. Arrows are
//! read as conditions on open sets: a set containing the source of an arrow
//! must also contain its target. An optional set of question marks singles
//! out points whose information is to be erased.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A point of a two-column graph. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    L(usize),
    R(usize),
}

impl Point {
    /// Parses the machine token form `L<a>` / `R<b>`.
    pub fn parse(tok: &str) -> Result<Point> {
        let (kind, num) = tok.split_at(1);
        let idx: usize = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad point token `{tok}`")))?;
        if idx == 0 {
            return Err(Error::Parse(format!("point index must be >= 1 in `{tok}`")));
        }
        match kind {
            "L" => Ok(Point::L(idx)),
            "R" => Ok(Point::R(idx)),
            _ => Err(Error::Parse(format!("bad point token `{tok}`"))),
        }
    }

    /// Human-facing glyph: `4_` for `L4`, `.5` for `R5`.
    pub fn display_glyph(&self) -> String {
        match self {
            Point::L(a) => format!("{a}_"),
            Point::R(b) => format!(".{b}"),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::L(a) => write!(f, "L{a}"),
            Point::R(b) => write!(f, "R{b}"),
        }
    }
}

/// A two-column graph with an optional question-mark set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TwoColumnGraph {
    left_count: usize,
    right_count: usize,
    arrows: BTreeSet<(Point, Point)>,
    questions: BTreeSet<Point>,
}

impl TwoColumnGraph {
    pub fn new(
        left_count: usize,
        right_count: usize,
        arrows: impl IntoIterator<Item = (Point, Point)>,
        questions: impl IntoIterator<Item = Point>,
    ) -> Result<Self> {
        let arrows: BTreeSet<_> = arrows.into_iter().collect();
        let questions: BTreeSet<_> = questions.into_iter().collect();
        let g = TwoColumnGraph {
            left_count,
            right_count,
            arrows,
            questions,
        };
        for &(src, dst) in &g.arrows {
            g.check_point(src)?;
            g.check_point(dst)?;
            let cross = matches!(
                (src, dst),
                (Point::L(_), Point::R(_)) | (Point::R(_), Point::L(_))
            );
            if !cross {
                return Err(Error::Input(format!(
                    "arrow {src} -> {dst} stays inside one column"
                )));
            }
        }
        for &q in &g.questions {
            g.check_point(q)?;
        }
        Ok(g)
    }

    fn check_point(&self, p: Point) -> Result<()> {
        let ok = match p {
            Point::L(a) => a >= 1 && a <= self.left_count,
            Point::R(b) => b >= 1 && b <= self.right_count,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Range(format!("point {p} is not in the graph")))
        }
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn arrows(&self) -> &BTreeSet<(Point, Point)> {
        &self.arrows
    }

    pub fn questions(&self) -> &BTreeSet<Point> {
        &self.questions
    }

    /// Same graph with the question set replaced.
    pub fn with_questions(&self, questions: impl IntoIterator<Item = Point>) -> Result<Self> {
        TwoColumnGraph::new(
            self.left_count,
            self.right_count,
            self.arrows.iter().copied(),
            questions,
        )
    }

    /// All points, left column first.
    pub fn points(&self) -> Vec<Point> {
        let mut v: Vec<Point> = (1..=self.left_count).map(Point::L).collect();
        v.extend((1..=self.right_count).map(Point::R));
        v
    }

    /// The pile with `a` left points and `b` right points. Not necessarily open.
    pub fn pile(&self, a: usize, b: usize) -> Result<BTreeSet<Point>> {
        if a > self.left_count || b > self.right_count {
            return Err(Error::Range(format!(
                "pile({a},{b}) outside columns of height {} and {}",
                self.left_count, self.right_count
            )));
        }
        let mut s: BTreeSet<Point> = (1..=a).map(Point::L).collect();
        s.extend((1..=b).map(Point::R));
        Ok(s)
    }

    /// Whether `s` is open: down-closed under the implicit column arrows and
    /// closed under every explicit arrow.
    pub fn is_open(&self, s: &BTreeSet<Point>) -> bool {
        for &p in s {
            match p {
                Point::L(a) if a > 1 && !s.contains(&Point::L(a - 1)) => return false,
                Point::R(b) if b > 1 && !s.contains(&Point::R(b - 1)) => return false,
                _ => {}
            }
        }
        self.arrows
            .iter()
            .all(|&(src, dst)| !s.contains(&src) || s.contains(&dst))
    }

    /// Whether the forcing relation of the graph is acyclic, i.e. no point
    /// forces itself through a chain of column steps and arrows.
    pub fn is_acyclic(&self) -> bool {
        // cycle iff some pair of arrows La -> Rb and Rb' -> La' has b' <= b and a <= a'
        for &(s1, d1) in &self.arrows {
            if let (Point::L(a), Point::R(b)) = (s1, d1) {
                for &(s2, d2) in &self.arrows {
                    if let (Point::R(b2), Point::L(a2)) = (s2, d2) {
                        if b2 <= b && a <= a2 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Parses the line-oriented `.2cg` format.
///
/// ```text
/// # comment
/// left 4
/// right 6
/// arrow L1 R1
/// questions L2 L3 R1
/// ```
pub fn parse_2cg(text: &str) -> Result<TwoColumnGraph> {
    let mut left: Option<usize> = None;
    let mut right: Option<usize> = None;
    let mut arrows = Vec::new();
    let mut questions = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap();
        let ctx = |msg: String| Error::Parse(format!("line {}: {msg}", ln + 1));
        match head {
            "left" | "right" => {
                let n: usize = toks
                    .next()
                    .ok_or_else(|| ctx(format!("`{head}` needs a count")))?
                    .parse()
                    .map_err(|_| ctx(format!("`{head}` needs a number")))?;
                if toks.next().is_some() {
                    return Err(ctx(format!("trailing tokens after `{head}`")));
                }
                if head == "left" {
                    left = Some(n);
                } else {
                    right = Some(n);
                }
            }
            "arrow" => {
                let s = toks.next().ok_or_else(|| ctx("`arrow` needs two points".into()))?;
                let d = toks.next().ok_or_else(|| ctx("`arrow` needs two points".into()))?;
                if toks.next().is_some() {
                    return Err(ctx("trailing tokens after `arrow`".into()));
                }
                arrows.push((Point::parse(s)?, Point::parse(d)?));
            }
            "questions" => {
                for t in toks {
                    questions.push(Point::parse(t)?);
                }
            }
            other => return Err(ctx(format!("unknown directive `{other}`"))),
        }
    }
    let left = left.ok_or_else(|| Error::Parse("missing `left` line".into()))?;
    let right = right.ok_or_else(|| Error::Parse("missing `right` line".into()))?;
    TwoColumnGraph::new(left, right, arrows, questions)
}

/// Writes a graph in the `.2cg` format; output re-parses to an equal value.
pub fn write_2cg(g: &TwoColumnGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("left {}\n", g.left_count()));
    out.push_str(&format!("right {}\n", g.right_count()));
    for &(s, d) in g.arrows() {
        out.push_str(&format!("arrow {s} {d}\n"));
    }
    if !g.questions().is_empty() {
        out.push_str("questions");
        for q in g.questions() {
            out.push_str(&format!(" {q}"));
        }
        out.push('\n');
    }
    out
}
