use std::collections::BTreeMap;
use std::fmt;

use super::graph::GraphName;
use crate::{rat, Error, Rat, Result};

/// Rational combination of decorated graphs in the chi = -1 universe, keyed
/// by (graph, u-decoration of the input).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CombChain {
    terms: BTreeMap<(GraphName, i32), Rat>,
}

impl CombChain {
    pub fn zero() -> CombChain {
        CombChain::default()
    }

    pub fn term(c: Rat, g: GraphName, upow: i32) -> CombChain {
        let mut out = CombChain::zero();
        out.add(c, g, upow);
        out
    }

    pub fn add(&mut self, c: Rat, g: GraphName, upow: i32) {
        use num_traits::Zero;
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((g, upow)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(g, upow));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: GraphName, upow: i32) -> Rat {
        use num_traits::Zero;
        self.terms.get(&(g, upow)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(GraphName, i32), &Rat)> {
        self.terms.iter()
    }

    pub fn combine(&self, other: &CombChain) -> CombChain {
        let mut out = self.clone();
        for ((g, u), c) in &other.terms {
            out.add(c.clone(), *g, *u);
        }
        out
    }
}

impl fmt::Debug for CombChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((g, u), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}·{}[u^{}]", c, g.as_str(), u)?;
        }
        Ok(())
    }
}

/// The boundary operator `d + uD` on the chi = -1 sector, from the printed
/// tables: the wedge cell maps to twice the lollipop cell plus the bridge
/// cell; `uD` of the u^{-2} theta cell is six times the bridge cell; the
/// trivalent cells are closed.
pub fn differential(c: &CombChain) -> Result<CombChain> {
    let mut out = CombChain::zero();
    for ((g, u), q) in c.terms() {
        match (g, u) {
            (GraphName::WedgeIn, -1) => {
                // d(wedge, u^-1) = 2 lollipop + bridge.
                out.add(q * rat(2, 1), GraphName::LollipopIn, -1);
                out.add(q.clone(), GraphName::BridgeIn, -1);
            }
            (GraphName::ThetaIn, -2) => {
                // uD(theta, u^-2) = 6 bridge at u^-1; d(theta) = 0.
                out.add(q * rat(6, 1), GraphName::BridgeIn, -1);
            }
            (GraphName::Tripod, _) | (GraphName::Coproduct, _) | (GraphName::MukaiGraph, _) => {
                // Trivalent cells are closed.
            }
            (GraphName::LollipopIn, _) | (GraphName::BridgeIn, _) => {
                // Top cells of the tables; their boundaries are not needed
                // and are outside the supported sector.
                return Err(Error::UnsupportedGraph(format!(
                    "differential of bookkeeping cell {}",
                    g.as_str()
                )));
            }
            _ => {
                return Err(Error::UnsupportedGraph(format!(
                    "{}[u^{}] outside the chi = -1 tables",
                    g.as_str(),
                    u
                )))
            }
        }
    }
    Ok(out)
}

/// Twist-sewing. With one argument (`c2 = None`) this is the self-sewing
/// operator: defined on the tripod (two outputs), yielding half the lollipop
/// cell per the `3 * (1/6)` bookkeeping. With two arguments it is the odd
/// bracket; only the signature `(genus, boundary)` arithmetic is exposed for
/// chains outside the evaluated universe.
pub fn sew(c1: &CombChain, c2: Option<&CombChain>) -> Result<SewOutcome> {
    match c2 {
        None => {
            let mut out = CombChain::zero();
            for ((g, u), q) in c1.terms() {
                match g {
                    GraphName::Tripod => {
                        // One unordered output pair; the twist family is the
                        // lollipop cell.
                        out.add(q.clone(), GraphName::LollipopIn, *u);
                    }
                    _ => return Err(Error::NoSewablePair),
                }
            }
            Ok(SewOutcome::Chain(out))
        }
        Some(c2) => {
            // Bracket signature: genus adds, boundaries add minus two.
            let sig1 = signature(c1)?;
            let sig2 = signature(c2)?;
            Ok(SewOutcome::Signature {
                genus: sig1.0 + sig2.0,
                boundaries: sig1.1 + sig2.1 - 2,
            })
        }
    }
}

/// Result of a sewing operation.
#[derive(Debug, PartialEq, Eq)]
pub enum SewOutcome {
    Chain(CombChain),
    Signature { genus: u32, boundaries: u32 },
}

fn signature(c: &CombChain) -> Result<(u32, u32)> {
    let mut sig = None;
    for ((g, _), _) in c.terms() {
        let gr = super::graph::RibbonGraph::by_name(*g);
        let s = (gr.genus, gr.boundaries);
        match sig {
            None => sig = Some(s),
            Some(s0) if s0 != s => {
                return Err(Error::Other("mixed signatures in sewing".into()))
            }
            _ => {}
        }
    }
    sig.ok_or(Error::NoSewablePair)
}

/// Solves the genus-one master equation `(d + uD) S11 + Delta(S03) = 0` over
/// the two admissible genus-one cells, returning the tripod vertex (with its
/// coefficient 1/2) and the solved S11 combination, and verifying the
/// residual vanishes exactly.
pub fn solve_qme_chi_minus1() -> Result<(CombChain, CombChain)> {
    // iota(S03): coefficient 1/2 (three choices of outgoing boundary times
    // the 1/3! vertex weight).
    let s03 = CombChain::term(rat(1, 2), GraphName::Tripod, -1);

    // Delta(S03): self-sewing.
    let SewOutcome::Chain(delta_s03) = sew(&s03, None)? else {
        unreachable!()
    };

    // Ansatz a*(theta, u^-2) + b*(wedge, u^-1); match coefficients of the two
    // boundary cells.
    // d(ansatz) + Delta(S03) = (6a + b) bridge + (2b + delta) lollipop = 0.
    let delta_coeff = delta_s03.coeff(GraphName::LollipopIn, -1);
    let rows = vec![
        vec![(0usize, rat(6, 1)), (1usize, rat(1, 1))],
        vec![(1usize, rat(2, 1))],
    ];
    let rhs = vec![Rat::from_integer(0.into()), -delta_coeff];
    let out = crate::solver::rational_gauss(&rows, &rhs, 2)?;
    let (a, b) = (out.solution[0].clone(), out.solution[1].clone());

    let mut s11 = CombChain::zero();
    s11.add(a, GraphName::ThetaIn, -2);
    s11.add(b, GraphName::WedgeIn, -1);

    // Exact residual check.
    let residual = differential(&s11)?.combine(&delta_s03);
    if !residual.is_zero() {
        return Err(Error::Other(format!(
            "master equation residual is nonzero: {:?}",
            residual
        )));
    }
    Ok((s03, s11))
}
