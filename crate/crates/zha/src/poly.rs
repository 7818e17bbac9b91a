//! Polynomial J-operators: the quotient-operator catalog, the cut algebra of
//! slash-operators, the picc lattice identities, and the reduction of every
//! slashing to a polynomial.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Not;
use std::iter::Peekable;
use std::str::Chars;

use crate::error::{Error, Result};
use crate::lattice::{el, Zha, ZhaElement};
use crate::optable::{check_j123, JVerdict, OperatorTable};
use crate::picc::Picc;
use crate::slashing::{recognize_slash_operator, Slashing};

/// One-variable expressions over the Heyting connectives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    Var,
    Const(ZhaElement),
    Top,
    Bottom,
    Not(Box<PolyExpr>),
    And(Box<PolyExpr>, Box<PolyExpr>),
    Or(Box<PolyExpr>, Box<PolyExpr>),
    Imp(Box<PolyExpr>, Box<PolyExpr>),
}

impl PolyExpr {
    pub fn and(self, other: PolyExpr) -> PolyExpr {
        PolyExpr::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: PolyExpr) -> PolyExpr {
        PolyExpr::Or(Box::new(self), Box::new(other))
    }

    pub fn imp(self, other: PolyExpr) -> PolyExpr {
        PolyExpr::Imp(Box::new(self), Box::new(other))
    }

    /// Grammar text form with minimal parentheses.
    pub fn text(&self) -> String {
        self.render(0)
    }

    // precedence levels: imp 1 (right assoc), or 2, and 3, not 4, atoms 5
    fn render(&self, parent: u8) -> String {
        let (s, prec) = match self {
            PolyExpr::Var => ("P".to_string(), 5),
            PolyExpr::Const(c) => (c.token(), 5),
            PolyExpr::Top => ("T".to_string(), 5),
            PolyExpr::Bottom => ("F".to_string(), 5),
            PolyExpr::Not(e) => (format!("!{}", e.render(4)), 4),
            PolyExpr::And(a, b) => (format!("{} & {}", a.render(3), b.render(4)), 3),
            PolyExpr::Or(a, b) => (format!("{} | {}", a.render(2), b.render(3)), 2),
            PolyExpr::Imp(a, b) => (format!("{} -> {}", a.render(2), b.render(1)), 1),
        };
        if prec < parent {
            format!("({s})")
        } else {
            s
        }
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl std::ops::Not for PolyExpr {
    type Output = PolyExpr;

    fn not(self) -> PolyExpr {
        PolyExpr::Not(Box::new(self))
    }
}

/// Bottom-up evaluation at `p`; constants outside the host are domain errors.
pub fn eval_poly(e: &PolyExpr, zha: &Zha, p: ZhaElement) -> Result<ZhaElement> {
    zha.check_member(p)?;
    eval_inner(e, zha, p)
}

fn eval_inner(e: &PolyExpr, zha: &Zha, p: ZhaElement) -> Result<ZhaElement> {
    Ok(match e {
        PolyExpr::Var => p,
        PolyExpr::Const(c) => {
            zha.check_member(*c)?;
            *c
        }
        PolyExpr::Top => zha.top(),
        PolyExpr::Bottom => zha.bottom(),
        PolyExpr::Not(x) => zha.neg(eval_inner(x, zha, p)?),
        PolyExpr::And(x, y) => zha.meet(eval_inner(x, zha, p)?, eval_inner(y, zha, p)?),
        PolyExpr::Or(x, y) => zha.join(eval_inner(x, zha, p)?, eval_inner(y, zha, p)?),
        PolyExpr::Imp(x, y) => zha.imp(eval_inner(x, zha, p)?, eval_inner(y, zha, p)?),
    })
}

/// Tabulates the expression over the host.
pub fn tabulate_poly(e: &PolyExpr, zha: &Zha) -> Result<OperatorTable> {
    let mut table = std::collections::BTreeMap::new();
    for p in zha.elements() {
        table.insert(p, eval_poly(e, zha, p)?);
    }
    OperatorTable::new(zha.clone(), table)
}

/// Decides whether a one-variable polynomial is a J-operator on this host by
/// tabulating it and checking the axioms.
pub fn is_polynomial_j(e: &PolyExpr, zha: &Zha) -> Result<JVerdict> {
    Ok(check_j123(&tabulate_poly(e, zha)?))
}

/// The quotient-operator catalog of named polynomial J-operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedOperator {
    /// `P |-> !!P`
    NegNeg,
    /// The closed quotient `P |-> P v q`.
    OrConst(ZhaElement),
    /// The open quotient `P |-> r -> P`.
    ImpConst(ZhaElement),
    /// The Boolean quotient `P |-> (P -> r) -> r`.
    ImpImpConst(ZhaElement),
    /// The forcing quotient `P |-> (q v P) & (r -> P)`.
    Forcing(ZhaElement, ZhaElement),
    /// The mixed quotient `P |-> (P -> q) -> P`.
    Mixed(ZhaElement),
}

impl NamedOperator {
    /// Builds from a kind name and constant list; missing or surplus
    /// constants are arity errors.
    pub fn from_kind(kind: &str, constants: &[ZhaElement]) -> Result<NamedOperator> {
        let want = |n: usize| {
            if constants.len() == n {
                Ok(())
            } else {
                Err(Error::Arity(kind.to_string()))
            }
        };
        Ok(match kind {
            "neg_neg" => {
                want(0)?;
                NamedOperator::NegNeg
            }
            "or_const" => {
                want(1)?;
                NamedOperator::OrConst(constants[0])
            }
            "imp_const" => {
                want(1)?;
                NamedOperator::ImpConst(constants[0])
            }
            "imp_imp_const" => {
                want(1)?;
                NamedOperator::ImpImpConst(constants[0])
            }
            "forcing" => {
                want(2)?;
                NamedOperator::Forcing(constants[0], constants[1])
            }
            "mixed" => {
                want(1)?;
                NamedOperator::Mixed(constants[0])
            }
            other => return Err(Error::Input(format!("unknown operator kind `{other}`"))),
        })
    }

    pub fn expr(&self) -> PolyExpr {
        use PolyExpr::*;
        match *self {
            NamedOperator::NegNeg => Var.not().not(),
            NamedOperator::OrConst(q) => Var.or(Const(q)),
            NamedOperator::ImpConst(r) => Const(r).imp(Var),
            NamedOperator::ImpImpConst(r) => Var.imp(Const(r)).imp(Const(r)),
            NamedOperator::Forcing(q, r) => Const(q).or(Var).and(Const(r).imp(Var)),
            NamedOperator::Mixed(q) => Var.imp(Const(q)).imp(Var),
        }
    }

    pub fn tabulate(&self, zha: &Zha) -> Result<OperatorTable> {
        tabulate_poly(&self.expr(), zha)
    }
}

/// Builds a named operator table directly.
pub fn named_operator(kind: &str, constants: &[ZhaElement], zha: &Zha) -> Result<OperatorTable> {
    NamedOperator::from_kind(kind, constants)?.tabulate(zha)
}

/// Pointwise meet of two operators; the meet of J-operators is again one.
pub fn op_meet(j: &OperatorTable, k: &OperatorTable) -> Result<OperatorTable> {
    j.pointwise_meet(k)
}

/// Join of two slash-operators, computed through cut sets: the join keeps
/// exactly the cuts common to both.
pub fn op_join_slash(j: &Slashing, k: &Slashing) -> Result<Slashing> {
    if j.host() != k.host() {
        return Err(Error::Shape("slashings live on different hosts".into()));
    }
    let left = j.left().join(k.left())?;
    let right = j.right().join(k.right())?;
    Slashing::new(j.host().clone(), left, right)
}

/// The cut positions of a slashing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSet {
    pub left_cuts: BTreeSet<usize>,
    pub right_cuts: BTreeSet<usize>,
}

pub fn cuts_of(s: &Slashing) -> CutSet {
    CutSet {
        left_cuts: s.left().cuts().clone(),
        right_cuts: s.right().cuts().clone(),
    }
}

pub fn slashing_from_cuts(zha: &Zha, c: &CutSet) -> Result<Slashing> {
    let left = Picc::new(zha.l(), c.left_cuts.iter().copied())?;
    let right = Picc::new(zha.r(), c.right_cuts.iter().copied())?;
    Slashing::new(zha.clone(), left, right)
}

/// One quotient-algebra identity checked over all constants, with the first
/// failing constant pair if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub ok: bool,
    pub counterexample: Option<(ZhaElement, ZhaElement)>,
}

/// Report for the six quotient-algebra identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsReport {
    pub checks: Vec<IdentityCheck>,
}

impl FsReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Verifies the six identities of the quotient algebra for every pair of
/// constants in the host: joins and meets of closed and open quotients, and
/// the complementation laws.
pub fn fs_identities(zha: &Zha) -> Result<FsReport> {
    let els: Vec<ZhaElement> = zha.elements().collect();
    let index: std::collections::BTreeMap<ZhaElement, usize> =
        els.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    // one table and recognized slashing per constant, computed once
    let mut or_ops = Vec::with_capacity(els.len());
    let mut imp_ops = Vec::with_capacity(els.len());
    for &a in &els {
        let or_t = NamedOperator::OrConst(a).tabulate(zha)?;
        let imp_t = NamedOperator::ImpConst(a).tabulate(zha)?;
        let or_s = recognize_slash_operator(&or_t)
            .map_err(|r| Error::Contract(format!("closed quotient not a slash-operator: {r}")))?;
        let imp_s = recognize_slash_operator(&imp_t)
            .map_err(|r| Error::Contract(format!("open quotient not a slash-operator: {r}")))?;
        or_ops.push((or_t, or_s));
        imp_ops.push((imp_t, imp_s));
    }
    let mut checks = vec![
        IdentityCheck { name: "closed quotients join: (va) v (vb) = (v a|b)", ok: true, counterexample: None },
        IdentityCheck { name: "open quotients join: (->a) v (->b) = (-> a&b)", ok: true, counterexample: None },
        IdentityCheck { name: "closed quotients meet: (va) & (vb) = (v a&b)", ok: true, counterexample: None },
        IdentityCheck { name: "open quotients meet: (->a) & (->b) = (-> a|b)", ok: true, counterexample: None },
        IdentityCheck { name: "complement meet: (va) & (->a) = identity", ok: true, counterexample: None },
        IdentityCheck { name: "complement join: (va) v (->a) = top", ok: true, counterexample: None },
    ];
    let identity = OperatorTable::identity(zha);
    let top = OperatorTable::constant_top(zha);
    for (ia, &a) in els.iter().enumerate() {
        for (ib, &b) in els.iter().enumerate() {
            let results = [
                op_join_slash(&or_ops[ia].1, &or_ops[ib].1)?.to_table()
                    == or_ops[index[&a.join(&b)]].0,
                op_join_slash(&imp_ops[ia].1, &imp_ops[ib].1)?.to_table()
                    == imp_ops[index[&a.meet(&b)]].0,
                op_meet(&or_ops[ia].0, &or_ops[ib].0)? == or_ops[index[&a.meet(&b)]].0,
                op_meet(&imp_ops[ia].0, &imp_ops[ib].0)? == imp_ops[index[&a.join(&b)]].0,
                op_meet(&or_ops[ia].0, &imp_ops[ia].0)? == identity,
                op_join_slash(&or_ops[ia].1, &imp_ops[ia].1)?.to_table() == top,
            ];
            for (check, holds) in checks.iter_mut().zip(results) {
                if !holds && check.ok {
                    check.ok = false;
                    check.counterexample = Some((a, b));
                }
            }
        }
    }
    Ok(FsReport { checks })
}

/// Expresses a slashing as a polynomial: each cut contributes the factor
/// `(P -> c) -> c` where `c` is the top of the cut's lower region, and the
/// factors are met together. The empty meet is the constant top.
pub fn slashing_to_polynomial(s: &Slashing) -> PolyExpr {
    let zha = s.host();
    let mut factors = Vec::new();
    let single = |cs: CutSet| slashing_from_cuts(zha, &cs).expect("cut in range");
    for &c in s.left().cuts() {
        let s_c = single(CutSet {
            left_cuts: [c].into(),
            right_cuts: BTreeSet::new(),
        });
        factors.push(s_c.s_top(zha.bottom()));
    }
    for &c in s.right().cuts() {
        let s_c = single(CutSet {
            left_cuts: BTreeSet::new(),
            right_cuts: [c].into(),
        });
        factors.push(s_c.s_top(zha.bottom()));
    }
    let factor = |c: ZhaElement| {
        PolyExpr::Var
            .imp(PolyExpr::Const(c))
            .imp(PolyExpr::Const(c))
    };
    let mut iter = factors.into_iter();
    match iter.next() {
        None => PolyExpr::Top,
        Some(first) => iter.fold(factor(first), |acc, c| acc.and(factor(c))),
    }
}

/// Parses the polynomial grammar: atoms `P`, `T`, `F`, two-digit constants;
/// `!`, `&`, `|`, `->` with precedence `!` > `&` > `|` > `->`, `->` right
/// associative; parenthesized shorthand `(v 22)`, `(-> 24)`, `(->-> 21)`,
/// and meets/joins of those like `(v 42 & -> 24)`.
pub fn parse_poly(text: &str) -> Result<PolyExpr> {
    let mut p = Parser {
        chars: text.chars().peekable(),
        src: text,
    };
    let e = p.imp_expr()?;
    p.skip_ws();
    if p.chars.peek().is_some() {
        return Err(Error::Parse(format!("trailing input in `{text}`")));
    }
    Ok(e)
}

struct Parser<'a> {
    chars: Peekable<Chars<'a>>,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.chars.peek() == Some(&c) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{c}` in `{}`", self.src)))
        }
    }

    fn arrow(&mut self) -> Result<()> {
        self.expect('-')?;
        self.expect('>')
    }

    fn peek_arrow(&mut self) -> bool {
        let mut clone = self.chars.clone();
        clone.next() == Some('-') && clone.next() == Some('>')
    }

    fn imp_expr(&mut self) -> Result<PolyExpr> {
        let lhs = self.or_expr()?;
        self.skip_ws();
        if self.peek_arrow() {
            self.arrow()?;
            let rhs = self.imp_expr()?; // right associative
            return Ok(lhs.imp(rhs));
        }
        Ok(lhs)
    }

    fn or_expr(&mut self) -> Result<PolyExpr> {
        let mut e = self.and_expr()?;
        loop {
            self.skip_ws();
            if self.eat('|') {
                e = e.or(self.and_expr()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn and_expr(&mut self) -> Result<PolyExpr> {
        let mut e = self.not_expr()?;
        loop {
            self.skip_ws();
            if self.eat('&') {
                e = e.and(self.not_expr()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn not_expr(&mut self) -> Result<PolyExpr> {
        self.skip_ws();
        if self.eat('!') {
            return Ok(self.not_expr()?.not());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<PolyExpr> {
        self.skip_ws();
        match self.chars.peek() {
            Some('P') => {
                self.chars.next();
                Ok(PolyExpr::Var)
            }
            Some('T') => {
                self.chars.next();
                Ok(PolyExpr::Top)
            }
            Some('F') => {
                self.chars.next();
                Ok(PolyExpr::Bottom)
            }
            Some('(') => {
                self.chars.next();
                self.skip_ws();
                let e = if matches!(self.chars.peek(), Some('v')) || self.peek_arrow() {
                    self.shorthand()?
                } else {
                    self.imp_expr()?
                };
                self.skip_ws();
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || *c == '[' => Ok(PolyExpr::Const(self.constant()?)),
            _ => Err(Error::Parse(format!("unexpected input in `{}`", self.src))),
        }
    }

    fn digit(&mut self) -> Result<usize> {
        match self.chars.peek() {
            Some('[') => {
                self.chars.next();
                let mut num = String::new();
                loop {
                    match self.chars.next() {
                        Some(']') => break,
                        Some(d) if d.is_ascii_digit() => num.push(d),
                        _ => {
                            return Err(Error::Parse(format!(
                                "unterminated `[` in `{}`",
                                self.src
                            )))
                        }
                    }
                }
                num.parse()
                    .map_err(|_| Error::Parse(format!("empty `[]` in `{}`", self.src)))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = *c as usize - '0' as usize;
                self.chars.next();
                Ok(d)
            }
            _ => Err(Error::Parse(format!("expected digit in `{}`", self.src))),
        }
    }

    fn constant(&mut self) -> Result<ZhaElement> {
        let a = self.digit()?;
        let b = self.digit()?;
        Ok(el(a, b))
    }

    /// Inside parens: `v 22`, `-> 24`, `->-> 21`, combined with `&` or `|`.
    fn shorthand(&mut self) -> Result<PolyExpr> {
        let mut e = self.shorthand_atom()?;
        loop {
            self.skip_ws();
            if self.eat('&') {
                e = e.and(self.shorthand_atom()?);
            } else if self.eat('|') {
                e = e.or(self.shorthand_atom()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn shorthand_atom(&mut self) -> Result<PolyExpr> {
        self.skip_ws();
        if self.eat('v') {
            self.skip_ws();
            let c = self.constant()?;
            return Ok(PolyExpr::Var.or(PolyExpr::Const(c)));
        }
        if self.peek_arrow() {
            self.arrow()?;
            if self.peek_arrow() {
                self.arrow()?;
                self.skip_ws();
                let c = self.constant()?;
                return Ok(PolyExpr::Var
                    .imp(PolyExpr::Const(c))
                    .imp(PolyExpr::Const(c)));
            }
            self.skip_ws();
            let c = self.constant()?;
            return Ok(PolyExpr::Const(c).imp(PolyExpr::Var));
        }
        Err(Error::Parse(format!(
            "bad operator shorthand in `{}`",
            self.src
        )))
    }
}
