//! Slashings: pairs of piccs cutting a ZHA into interval regions, the two
//! equivalence relations they induce, and the question-mark correspondence.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Point, TwoColumnGraph};
use crate::lattice::{Zha, ZhaElement};
use crate::optable::OperatorTable;
use crate::picc::{parse_picc, Picc};

/// A slashing on a ZHA: one picc for the left digits, one for the right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Slashing {
    host: Zha,
    left: Picc,
    right: Picc,
}

impl Slashing {
    pub fn new(host: Zha, left: Picc, right: Picc) -> Result<Slashing> {
        if left.n() != host.l() || right.n() != host.r() {
            return Err(Error::Shape(format!(
                "piccs on 0..={} and 0..={} do not fit a host with top {}",
                left.n(),
                right.n(),
                host.top()
            )));
        }
        Ok(Slashing { host, left, right })
    }

    /// The slashing with no cuts: a single region.
    pub fn trivial(host: Zha) -> Slashing {
        let (l, r) = (host.l(), host.r());
        Slashing {
            host,
            left: Picc::single_class(l),
            right: Picc::single_class(r),
        }
    }

    /// The slashing with every cut: singleton regions.
    pub fn identity(host: Zha) -> Slashing {
        let (l, r) = (host.l(), host.r());
        Slashing {
            host,
            left: Picc::identity(l),
            right: Picc::identity(r),
        }
    }

    pub fn host(&self) -> &Zha {
        &self.host
    }

    pub fn left(&self) -> &Picc {
        &self.left
    }

    pub fn right(&self) -> &Picc {
        &self.right
    }

    /// `ab ~_S cd` iff `a ~_L c` and `b ~_R d`.
    pub fn equiv(&self, x: ZhaElement, y: ZhaElement) -> bool {
        self.left.equiv(x.a, y.a) && self.right.equiv(x.b, y.b)
    }

    /// The region of `x`: its equivalence class intersected with the host.
    pub fn region(&self, x: ZhaElement) -> Vec<ZhaElement> {
        self.host.elements().filter(|y| self.equiv(x, *y)).collect()
    }

    /// `x^S`: the top of `x`'s region, the componentwise maximum taken
    /// inside the host (regions are closed under join, so it is a member).
    pub fn s_top(&self, x: ZhaElement) -> ZhaElement {
        debug_assert!(self.host.contains(x));
        let mut best = x;
        for y in self.host.elements() {
            if self.equiv(x, y) {
                best = best.join(&y);
            }
        }
        debug_assert!(self.host.contains(best) && self.equiv(x, best));
        best
    }

    /// The slash-operator of this slashing as an explicit table.
    pub fn to_table(&self) -> OperatorTable {
        OperatorTable::tabulate(&self.host, |e| self.s_top(e)).expect("s_top stays in host")
    }

    /// Text form matching the picc pair notation, e.g. `(0|1234, 0123|45|6)`.
    pub fn text(&self) -> String {
        format!("({}, {})", self.left.text(), self.right.text())
    }

    /// Display form with directional glyphs, e.g. `4321/0, 0123\45\6`.
    pub fn display(&self) -> String {
        format!("{}, {}", self.left.display(true), self.right.display(false))
    }

    /// Parses the `(<leftpicc>, <rightpicc>)` form onto a host.
    pub fn parse(host: &Zha, text: &str) -> Result<Slashing> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("slashing `{text}` must be parenthesized")))?;
        let (l, r) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("slashing `{text}` needs two piccs")))?;
        Slashing::new(host.clone(), parse_picc(l.trim())?, parse_picc(r.trim())?)
    }
}

impl fmt::Display for Slashing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// `ab ~_Q cd` iff the piles agree outside the question set.
pub fn q_equiv(graph: &TwoColumnGraph, x: ZhaElement, y: ZhaElement) -> bool {
    let strip = |e: ZhaElement| -> BTreeSet<Point> {
        graph
            .pile(e.a, e.b)
            .expect("element of the host is in range")
            .difference(graph.questions())
            .copied()
            .collect()
    };
    strip(x) == strip(y)
}

/// The slashing induced by a graph's question marks: a cut at each position
/// whose point survives the erasure.
pub fn slashing_from_questions(graph: &TwoColumnGraph) -> Slashing {
    let left_cuts = (1..=graph.left_count()).filter(|&a| !graph.questions().contains(&Point::L(a)));
    let right_cuts =
        (1..=graph.right_count()).filter(|&b| !graph.questions().contains(&Point::R(b)));
    let left = Picc::new(graph.left_count(), left_cuts).expect("cuts in range");
    let right = Picc::new(graph.right_count(), right_cuts).expect("cuts in range");
    Slashing {
        host: Zha::from_2cg(graph),
        left,
        right,
    }
}

/// The question set whose induced slashing is `s`: a point is erased exactly
/// when its position carries no cut.
pub fn questions_from_slashing(graph: &TwoColumnGraph, s: &Slashing) -> Result<BTreeSet<Point>> {
    if s.left().n() != graph.left_count() || s.right().n() != graph.right_count() {
        return Err(Error::Shape(
            "slashing piccs do not match the graph's column heights".into(),
        ));
    }
    let mut q = BTreeSet::new();
    for a in 1..=graph.left_count() {
        if !s.left().cuts().contains(&a) {
            q.insert(Point::L(a));
        }
    }
    for b in 1..=graph.right_count() {
        if !s.right().cuts().contains(&b) {
            q.insert(Point::R(b));
        }
    }
    Ok(q)
}

/// Why a table was rejected as a slash-operator, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlashRejection {
    /// The closed left relation has a non-contiguous class; the witness digit
    /// sits strictly between two equivalent digits without joining them.
    NonContiguousLeft { witness: usize },
    NonContiguousRight { witness: usize },
    /// The candidate slashing disagrees with the table at the witness.
    TableMismatch {
        at: ZhaElement,
        expected: ZhaElement,
        found: ZhaElement,
    },
}

impl fmt::Display for SlashRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlashRejection::NonContiguousLeft { witness } => {
                write!(f, "left classes not contiguous around digit {witness}")
            }
            SlashRejection::NonContiguousRight { witness } => {
                write!(f, "right classes not contiguous around digit {witness}")
            }
            SlashRejection::TableMismatch { at, expected, found } => {
                write!(f, "table sends {at} to {found}, slashing demands {expected}")
            }
        }
    }
}

/// Union-find closure of pairs into a partition of `{0..n}`; returns the
/// class representative array.
fn equivalence_closure(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for (x, y) in pairs {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx != ry {
            parent[rx.max(ry)] = rx.min(ry);
        }
    }
    (0..=n).map(|x| find(&mut parent, x)).collect()
}

/// If all classes of the closed relation are contiguous, the picc; otherwise
/// the first digit witnessing a gap.
fn picc_from_classes(n: usize, repr: &[usize]) -> std::result::Result<Picc, usize> {
    for b in 0..=n {
        // a gap: some class contains digits on both sides of b but not b
        let has_lower = (0..b).any(|a| repr[a] != repr[b] && (b + 1..=n).any(|c| repr[c] == repr[a]));
        if has_lower {
            return Err(b);
        }
    }
    let cuts = (1..=n).filter(|&i| repr[i] != repr[i - 1]);
    Ok(Picc::new(n, cuts).expect("cuts in range"))
}

/// Decides whether a table is a slash-operator: builds the induced digit
/// relations, closes them into equivalences, and checks that they are piccs
/// whose slash-operator reproduces the table. Rejection is a value carrying
/// the failed check and a witness.
pub fn recognize_slash_operator(
    t: &OperatorTable,
) -> std::result::Result<Slashing, SlashRejection> {
    let host = t.host();
    let left_repr = equivalence_closure(host.l(), t.entries().map(|(k, v)| (k.a, v.a)));
    let right_repr = equivalence_closure(host.r(), t.entries().map(|(k, v)| (k.b, v.b)));
    let left = picc_from_classes(host.l(), &left_repr)
        .map_err(|witness| SlashRejection::NonContiguousLeft { witness })?;
    let right = picc_from_classes(host.r(), &right_repr)
        .map_err(|witness| SlashRejection::NonContiguousRight { witness })?;
    let s = Slashing {
        host: host.clone(),
        left,
        right,
    };
    for (k, v) in t.entries() {
        let expected = s.s_top(k);
        if v != expected {
            return Err(SlashRejection::TableMismatch {
                at: k,
                expected,
                found: v,
            });
        }
    }
    Ok(s)
}

/// All slashings on a host, ordered by cut sets (left, then right).
pub fn all_slashings(host: &Zha) -> Vec<Slashing> {
    let mut out = Vec::new();
    for lmask in 0u64..(1 << host.l()) {
        for rmask in 0u64..(1 << host.r()) {
            let left = Picc::new(host.l(), (1..=host.l()).filter(|i| lmask >> (i - 1) & 1 == 1))
                .expect("in range");
            let right = Picc::new(host.r(), (1..=host.r()).filter(|i| rmask >> (i - 1) & 1 == 1))
                .expect("in range");
            out.push(Slashing {
                host: host.clone(),
                left,
                right,
            });
        }
    }
    out
}

/// The reconstructed running example: columns of height 4 and 6, arrows
/// chosen so that `21` is not open and the question marks induce the
/// slashing `(0|1234, 0123|45|6)`.
pub fn running_example() -> TwoColumnGraph {
    TwoColumnGraph::new(
        4,
        6,
        [
            (Point::L(1), Point::R(1)),
            (Point::L(2), Point::R(2)),
            (Point::L(3), Point::R(4)),
            (Point::L(4), Point::R(5)),
        ],
        [
            Point::L(2),
            Point::L(3),
            Point::L(4),
            Point::R(1),
            Point::R(2),
            Point::R(3),
            Point::R(5),
        ],
    )
    .expect("fixture is well formed")
}
