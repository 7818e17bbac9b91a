//! Explicit operator tables on a ZHA and the J-operator axioms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Zha, ZhaElement};

/// A total function from a ZHA to itself, given by its table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OperatorTable {
    host: Zha,
    table: BTreeMap<ZhaElement, ZhaElement>,
}

impl OperatorTable {
    pub fn new(host: Zha, table: BTreeMap<ZhaElement, ZhaElement>) -> Result<OperatorTable> {
        for e in host.elements() {
            match table.get(&e) {
                None => {
                    return Err(Error::Input(format!("table has no entry for {e}")));
                }
                Some(v) if !host.contains(*v) => {
                    return Err(Error::Domain(format!("table sends {e} to foreign {v}")));
                }
                _ => {}
            }
        }
        if table.len() != host.len() {
            return Err(Error::Input("table has entries outside the host".into()));
        }
        Ok(OperatorTable { host, table })
    }

    /// Tabulates a function over the host.
    pub fn tabulate(host: &Zha, f: impl Fn(ZhaElement) -> ZhaElement) -> Result<OperatorTable> {
        let table = host.elements().map(|e| (e, f(e))).collect();
        OperatorTable::new(host.clone(), table)
    }

    pub fn identity(host: &Zha) -> OperatorTable {
        OperatorTable::tabulate(host, |e| e).expect("identity is total")
    }

    pub fn constant_top(host: &Zha) -> OperatorTable {
        let top = host.top();
        OperatorTable::tabulate(host, |_| top).expect("constant is total")
    }

    pub fn host(&self) -> &Zha {
        &self.host
    }

    pub fn apply(&self, e: ZhaElement) -> ZhaElement {
        self.table[&e]
    }

    pub fn get(&self, e: ZhaElement) -> Result<ZhaElement> {
        self.table
            .get(&e)
            .copied()
            .ok_or_else(|| Error::Domain(format!("{e} is not in the host")))
    }

    pub fn entries(&self) -> impl Iterator<Item = (ZhaElement, ZhaElement)> + '_ {
        self.table.iter().map(|(k, v)| (*k, *v))
    }

    pub fn same_host(&self, other: &OperatorTable) -> Result<()> {
        if self.host == other.host {
            Ok(())
        } else {
            Err(Error::Shape("operator tables live on different hosts".into()))
        }
    }

    /// Pointwise meet of two tables on the same host.
    pub fn pointwise_meet(&self, other: &OperatorTable) -> Result<OperatorTable> {
        self.same_host(other)?;
        OperatorTable::tabulate(&self.host, |e| self.apply(e).meet(&other.apply(e)))
    }

    /// Text form: one `<ab> -> <cd>` line per element, sorted.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.table {
            out.push_str(&format!("{k} -> {v}\n"));
        }
        out
    }

    /// Parses the text form. Lines may come in any order.
    pub fn parse(host: &Zha, text: &str) -> Result<OperatorTable> {
        let mut table = BTreeMap::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("line {}: expected `ab -> cd`", ln + 1)))?;
            let k = ZhaElement::parse(lhs.trim())?;
            let v = ZhaElement::parse(rhs.trim())?;
            if table.insert(k, v).is_some() {
                return Err(Error::Parse(format!("line {}: duplicate entry for {k}", ln + 1)));
            }
        }
        OperatorTable::new(host.clone(), table)
    }
}

impl fmt::Display for OperatorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// The outcome of checking the three J-operator axioms, with the first
/// failing element in lexicographic order as witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JVerdict {
    pub j1_ok: bool,
    pub j2_ok: bool,
    pub j3_ok: bool,
    pub j1_witness: Option<ZhaElement>,
    pub j2_witness: Option<ZhaElement>,
    pub j3_witness: Option<(ZhaElement, ZhaElement)>,
}

impl JVerdict {
    pub fn passed(&self) -> bool {
        self.j1_ok && self.j2_ok && self.j3_ok
    }

    pub fn describe(&self) -> String {
        if self.passed() {
            return "J-operator: yes".into();
        }
        let mut reasons = Vec::new();
        if let Some(w) = self.j1_witness {
            reasons.push(format!("J1 fails at {w}"));
        }
        if let Some(w) = self.j2_witness {
            reasons.push(format!("J2 fails at {w}"));
        }
        if let Some((p, q)) = self.j3_witness {
            reasons.push(format!("J3 fails at ({p}, {q})"));
        }
        format!("J-operator: no ({})", reasons.join("; "))
    }
}

/// Checks J1 (inflationary), J2 (idempotent) and J3 (meet-preserving) over
/// the whole host.
pub fn check_j123(t: &OperatorTable) -> JVerdict {
    let host = t.host();
    let mut j1_witness = None;
    let mut j2_witness = None;
    let mut j3_witness = None;
    for p in host.elements() {
        let fp = t.apply(p);
        if j1_witness.is_none() && !p.leq(&fp) {
            j1_witness = Some(p);
        }
        if j2_witness.is_none() && t.apply(fp) != fp {
            j2_witness = Some(p);
        }
    }
    'outer: for p in host.elements() {
        for q in host.elements() {
            if t.apply(p.meet(&q)) != t.apply(p).meet(&t.apply(q)) {
                j3_witness = Some((p, q));
                break 'outer;
            }
        }
    }
    JVerdict {
        j1_ok: j1_witness.is_none(),
        j2_ok: j2_witness.is_none(),
        j3_ok: j3_witness.is_none(),
        j1_witness,
        j2_witness,
        j3_witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::el;

    #[test]
    fn or_constant_is_a_j_operator() {
        let h = Zha::grid(4, 4);
        let t = OperatorTable::tabulate(&h, |p| p.join(&el(2, 2))).unwrap();
        assert!(check_j123(&t).passed());
    }

    #[test]
    fn and_constant_fails_j1_at_first_lex_witness() {
        let h = Zha::grid(4, 4);
        let t = OperatorTable::tabulate(&h, |p| p.meet(&el(2, 2))).unwrap();
        let v = check_j123(&t);
        assert!(!v.j1_ok);
        // first element in lexicographic order with p /\ 22 < p is 03
        assert_eq!(v.j1_witness, Some(el(0, 3)));
    }

    #[test]
    fn identity_passes() {
        let h = Zha::grid(2, 3);
        let v = check_j123(&OperatorTable::identity(&h));
        assert!(v.passed());
        assert_eq!(v.describe(), "J-operator: yes");
    }

    #[test]
    fn table_text_round_trip() {
        let h = Zha::grid(1, 1);
        let t = OperatorTable::constant_top(&h);
        let parsed = OperatorTable::parse(&h, &t.text()).unwrap();
        assert_eq!(t, parsed);
        // order-insensitive read
        let shuffled = "11 -> 11\n00 -> 11\n10 -> 11\n01 -> 11\n";
        assert_eq!(OperatorTable::parse(&h, shuffled).unwrap(), t);
    }

    #[test]
    fn table_validation() {
        let h = Zha::grid(1, 1);
        assert!(OperatorTable::parse(&h, "00 -> 11\n").is_err()); // partial
        let g = Zha::grid(1, 0);
        assert!(OperatorTable::tabulate(&g, |_| el(5, 5)).is_err()); // foreign value
    }
}
