//! ASCII rendering: the lozenge diagram of a lattice with optional cut
//! glyphs, and the step table of a bottom-to-top path.

use zha::poly::cuts_of;
use zha::{el, q_equiv, slashing_from_questions, Point, Slashing, TwoColumnGraph, Zha, ZhaElement};

/// Output style for tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableStyle {
    Ascii,
    Tsv,
}

/// What a graph rendering should include.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderConfig {
    pub style: TableStyle,
    pub show_cuts: bool,
    pub show_questions: bool,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            style: TableStyle::Ascii,
            show_cuts: false,
            show_questions: false,
        }
    }
}

/// Renders the lattice of a graph, with the cuts of its question-induced
/// slashing and the question set itself when asked for.
pub fn render_graph(graph: &TwoColumnGraph, config: RenderConfig) -> String {
    let slashing = slashing_from_questions(graph);
    let mut out = render_zha(slashing.host(), config.show_cuts.then_some(&slashing));
    if config.show_questions {
        let glyphs: Vec<String> = graph
            .questions()
            .iter()
            .map(|p| p.display_glyph())
            .collect();
        out.push_str(&format!("questions: {}\n", glyphs.join(" ")));
    }
    out
}

/// Draws the lattice as a lozenge of digit pairs, one row per rank. With a
/// slashing, `/` and `\` glyphs trace each cut as a contiguous diagonal run
/// crossing the cut edges and the gaps between cells.
pub fn render_zha(zha: &Zha, slashing: Option<&Slashing>) -> String {
    if let Some(s) = slashing {
        assert_eq!(s.host(), zha, "slashing must live on the rendered lattice");
    }
    let col = |e: ZhaElement| (e.b + zha.l() - e.a) * 2;
    let max_rank = zha.l() + zha.r();
    let with_glyph_rows = slashing.is_some_and(|s| {
        !s.left().cuts().is_empty() || !s.right().cuts().is_empty()
    });
    // row index per rank, bottom rank last
    let row_of = |rank: usize| if with_glyph_rows { rank * 2 } else { rank };
    let mut rows: Vec<String> =
        vec![String::new(); if with_glyph_rows { 2 * max_rank + 1 } else { max_rank + 1 }];
    for e in zha.elements() {
        put(&mut rows[row_of(e.a + e.b)], col(e), &e.token());
    }
    if let Some(s) = slashing.filter(|_| with_glyph_rows) {
        let cuts = cuts_of(s);
        for e in zha.elements() {
            let rank = e.a + e.b;
            // a left cut crosses the edge up to (a+1, b), running northeast
            let up_left = el(e.a + 1, e.b);
            if zha.contains(up_left) && cuts.left_cuts.contains(&(e.a + 1)) {
                put(&mut rows[row_of(rank) + 1], col(e) - 1, "/");
                // continue through the next cell row when the run goes on
                let next = el(e.a, e.b + 1);
                if zha.contains(next) && zha.contains(el(e.a + 1, e.b + 1)) {
                    put(&mut rows[row_of(rank + 1)], col(e), "/");
                }
            }
            // a right cut crosses the edge up to (a, b+1), running northwest
            let up_right = el(e.a, e.b + 1);
            if zha.contains(up_right) && cuts.right_cuts.contains(&(e.b + 1)) {
                put(&mut rows[row_of(rank) + 1], col(e) + 1, "\\");
                let next = el(e.a + 1, e.b);
                if zha.contains(next) && zha.contains(el(e.a + 1, e.b + 1)) {
                    put(&mut rows[row_of(rank + 1)], col(e), "\\");
                }
            }
        }
    }
    let mut out = String::new();
    for row in rows.iter().rev() {
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

/// Writes `text` into the row at `c`, padding with spaces; a `/` meeting a
/// `\` becomes an `X` crossing.
fn put(row: &mut String, c: usize, text: &str) {
    if row.len() < c + text.len() {
        let pad = c + text.len() - row.len();
        row.push_str(&" ".repeat(pad));
    }
    let crossing = text.len() == 1
        && matches!(text, "/" | "\\")
        && matches!(&row[c..=c], "/" | "\\")
        && &row[c..=c] != text;
    let replacement = if crossing { "X" } else { text };
    row.replace_range(c..c + text.len(), replacement);
}

/// The default bottom-to-top path: step northeast while possible, otherwise
/// northwest.
pub fn default_path(zha: &Zha) -> Vec<ZhaElement> {
    let mut path = vec![zha.bottom()];
    let mut at = zha.bottom();
    while at != zha.top() {
        let ne = el(at.a, at.b + 1);
        let nw = el(at.a + 1, at.b);
        at = if zha.contains(ne) {
            ne
        } else if zha.contains(nw) {
            nw
        } else {
            // no unit step exists; the lattice did not come from an acyclic
            // graph, so stop rather than loop
            break;
        };
        path.push(at);
    }
    path
}

/// Renders the step table of a path: one row per unit step, top step first,
/// showing the pile difference, its membership in the question set, the two
/// equivalence verdicts, and the slashing fragment the step witnesses.
pub fn render_path_table(
    graph: &TwoColumnGraph,
    path: &[ZhaElement],
    style: TableStyle,
) -> Result<String, zha::Error> {
    let host = Zha::from_2cg(graph);
    if path.first() != Some(&host.bottom()) || path.last() != Some(&host.top()) {
        return Err(zha::Error::Input(
            "path must run from the bottom element to the top".into(),
        ));
    }
    for e in path {
        host.check_member(*e)?;
    }
    let mut rows: Vec<[String; 5]> = Vec::new();
    for step in path.windows(2).rev() {
        let (lo, hi) = (step[0], step[1]);
        let point = if hi.a == lo.a + 1 && hi.b == lo.b {
            Point::L(hi.a)
        } else if hi.b == lo.b + 1 && hi.a == lo.a {
            Point::R(hi.b)
        } else {
            return Err(zha::Error::Input(format!(
                "step {lo} -> {hi} is not a unit step"
            )));
        };
        let in_q = graph.questions().contains(&point);
        let equivalent = q_equiv(graph, lo, hi);
        let glyph = point.display_glyph();
        let (rel, frag) = match point {
            Point::L(a) => (
                format!("{} {} {}", a - 1, if equivalent { "~L" } else { "!~L" }, a),
                if equivalent {
                    format!("{}{}", a, a - 1)
                } else {
                    format!("{}/{}", a, a - 1)
                },
            ),
            Point::R(b) => (
                format!("{} {} {}", b - 1, if equivalent { "~R" } else { "!~R" }, b),
                if equivalent {
                    format!("{}{}", b - 1, b)
                } else {
                    format!("{}\\{}", b - 1, b)
                },
            ),
        };
        rows.push([
            format!("pile({})\\pile({}) = {{{}}}", hi.token(), lo.token(), glyph),
            format!("{glyph} {} Q", if in_q { "in" } else { "not in" }),
            format!(
                "{} {} {}",
                lo.token(),
                if equivalent { "~Q" } else { "!~Q" },
                hi.token()
            ),
            rel,
            frag,
        ]);
    }
    Ok(match style {
        TableStyle::Tsv => rows
            .iter()
            .map(|r| r.join("\t") + "\n")
            .collect::<String>(),
        TableStyle::Ascii => {
            let mut widths = [0usize; 5];
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            rows.iter()
                .map(|row| {
                    let mut line = String::new();
                    for (i, cell) in row.iter().enumerate() {
                        line.push_str(cell);
                        if i + 1 < row.len() {
                            line.push_str(&" ".repeat(widths[i] - cell.len() + 3));
                        }
                    }
                    line.trim_end().to_string() + "\n"
                })
                .collect()
        }
    })
}
