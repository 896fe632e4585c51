use std::collections::HashMap;

use num_traits::Zero;

use super::basis::{pairing, pairing_dual, word_parity, Gen, Word};
use super::gtable::{GKey, GTable};
use crate::qmod::FormElement;
use crate::sign::{rotation_sign, Sign};
use crate::{rint, Error, Rat, Result};

/// Which set of structure constants the algebra carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gauge {
    /// Polishchuk's algebra: almost-holomorphic modular constants.
    Modular,
    /// The phi-image: holomorphic quasi-modular constants.
    Holomorphic,
}

/// A single table value `mu_k(word) = q * g * out` where `g` is an optional
/// structure form; entries of the binary product have `g = None`.
#[derive(Clone, Debug, PartialEq)]
pub struct MuEntry {
    pub q: Rat,
    pub g: Option<GKey>,
    pub out: Gen,
}

impl MuEntry {
    pub fn resolve(&self, table: &GTable) -> Result<FormElement> {
        match self.g {
            None => Ok(FormElement::from_rat(self.q.clone())),
            Some(key) => {
                let g = table
                    .get(&key)
                    .ok_or_else(|| Error::IncompleteTable(format!("g_({},{})", key.0, key.1)))?;
                Ok(g.scale(&self.q))
            }
        }
    }
}

/// The cyclic A-infinity structure: sparse multiplication tables per arity,
/// together with the structure-form table used to resolve coefficients.
#[derive(Clone)]
pub struct AInfStructure {
    pub gauge: Gauge,
    pub max_arity: usize,
    tables: Vec<HashMap<Word, MuEntry>>,
    pub gtable: GTable,
}

impl AInfStructure {
    /// Raw table lookup; `None` means the product vanishes.
    pub fn mu_entry(&self, args: &[Gen]) -> Option<&MuEntry> {
        let k = args.len();
        if k >= self.tables.len() {
            return None;
        }
        self.tables[k].get(args)
    }

    /// Resolved product `mu_k(args)` as `(coefficient, generator)`.
    pub fn mu(&self, args: &[Gen]) -> Result<Option<(FormElement, Gen)>> {
        let k = args.len();
        if k > self.max_arity {
            // Guard against silently dropping products whose structure forms
            // are outside the tabulated weight range.
            if could_need_higher_table(args) {
                return Err(Error::IncompleteTable(format!(
                    "mu_{} on {:?} would need structure forms of weight {}",
                    k,
                    args,
                    k - 2
                )));
            }
            return Ok(None);
        }
        match self.mu_entry(args) {
            None => Ok(None),
            Some(e) => {
                let c = e.resolve(&self.gtable)?;
                if c.is_zero() {
                    Ok(None)
                } else {
                    Ok(Some((c, e.out)))
                }
            }
        }
    }

    /// The cyclic tensor `c_k(x_1, .., x_k) = <mu_{k-1}(x_1..x_{k-1}), x_k>`.
    pub fn c_tensor(&self, args: &[Gen]) -> Result<FormElement> {
        debug_assert!(args.len() >= 2);
        let (coeff, out) = match self.mu(&args[..args.len() - 1])? {
            None => return Ok(FormElement::zero()),
            Some(v) => v,
        };
        let p = pairing(out, *args.last().unwrap());
        if p.is_zero() {
            Ok(FormElement::zero())
        } else {
            Ok(coeff.scale(&p))
        }
    }

    /// All argument words with a nonzero table entry at the given arity.
    pub fn support(&self, arity: usize) -> impl Iterator<Item = (&Word, &MuEntry)> {
        self.tables
            .get(arity)
            .into_iter()
            .flat_map(|t| t.iter())
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.tables.len()).filter(|&k| !self.tables[k].is_empty())
    }

    /// Test scaffolding: negates every entry at the given arities.
    #[doc(hidden)]
    pub fn flip_arities(&mut self, arities: &[usize]) {
        for &k in arities {
            if k < self.tables.len() {
                for e in self.tables[k].values_mut() {
                    e.q = -e.q.clone();
                }
            }
        }
    }
}

/// Pattern check: words that could index a master-formula orbit beyond the
/// tabulated arities (no units, two eta and two theta up to one removal).
fn could_need_higher_table(args: &[Gen]) -> bool {
    if args.iter().any(|g| g.is_unit()) {
        return false;
    }
    let eta = args.iter().filter(|&&g| g == Gen::Eta).count();
    let theta = args.iter().filter(|&&g| g == Gen::Theta).count();
    (eta == 2 && theta == 2) || (eta == 2 && theta == 1) || (eta == 1 && theta == 2)
}

/// Builds the multiplication tables: the unital binary product plus the full
/// cyclic closure of the master formula for every even arity up to
/// `max_arity` (odd arities vanish). Requires every structure form of weight
/// up to `max_arity - 2` to be present.
pub fn build_structure(gauge: Gauge, max_arity: usize, gtable: &GTable) -> Result<AInfStructure> {
    if max_arity >= 4 {
        gtable.require_complete((max_arity as i64 - 2) & !1)?;
    }
    build_unchecked(gauge, max_arity, gtable)
}

/// Table construction without the completeness check; used by the constraint
/// solver, which resolves structure forms symbolically.
pub(crate) fn build_unchecked(
    gauge: Gauge,
    max_arity: usize,
    gtable: &GTable,
) -> Result<AInfStructure> {
    let gtable = match gauge {
        Gauge::Modular => gtable.clone(),
        Gauge::Holomorphic => gtable.phi(),
    };
    let mut tables: Vec<HashMap<Word, MuEntry>> = vec![HashMap::new(); max_arity.max(2) + 1];

    build_mu2(&mut tables[2]);

    let mut k = 4;
    while k <= max_arity {
        build_orbits(k, &mut tables[k])?;
        k += 2;
    }

    Ok(AInfStructure { gauge, max_arity, tables, gtable })
}

/// The binary product: `mu2(theta, eta) = xi`, `mu2(eta, theta) = -xiL`
/// (the printed Yoneda products carry the opposite overall sign in the
/// unshifted convention), with the unit rules these force through cyclicity
/// and the arity-3 relations: `mu2(e, x) = x` and
/// `mu2(x, e) = (-1)^{|x|} x`.
fn build_mu2(table: &mut HashMap<Word, MuEntry>) {
    build_mu2_variant(table, 1, -1);
}

/// Parametrized builder used while pinning conventions: `s_te` and `s_et`
/// are the signs of `mu2(theta,eta) = s_te * xi`, `mu2(eta,theta) = s_et * xiL`;
/// unit signs are rederived by exhaustive consistency (cyclicity of c3 plus
/// the arity-3 relations). Panics if no consistent unit assignment exists.
pub(crate) fn build_mu2_variant(table: &mut HashMap<Word, MuEntry>, s_te: i64, s_et: i64) {
    use Gen::*;
    // Unknown unit signs, indexed: s1[x] = sign of mu2(e, x), s2[x] = sign of
    // mu2(x, e); only composable pairs matter.
    let gens = [IdO, IdL, Theta, Eta, Xi, XiL];
    let idx = |g: Gen| gens.iter().position(|&x| x == g).unwrap();
    for bits in 0u32..(1 << 12) {
        let s1 = |g: Gen| if bits & (1 << idx(g)) != 0 { -1i64 } else { 1 };
        let s2 = |g: Gen| if bits & (1 << (6 + idx(g))) != 0 { -1i64 } else { 1 };
        // Units must act consistently on themselves: mu2(e,e) is both a left
        // and a right unit action.
        if s1(IdO) != s2(IdO) || s1(IdL) != s2(IdL) {
            continue;
        }
        let mut t: HashMap<Word, MuEntry> = HashMap::new();
        let mut put = |t: &mut HashMap<Word, MuEntry>, a: Gen, b: Gen, q: i64, out: Gen| {
            t.insert(vec![a, b], MuEntry { q: rint(q), g: None, out });
        };
        for x in [IdO, Xi, Theta] {
            put(&mut t, IdO, x, s1(x), x);
        }
        for x in [IdL, XiL, Eta] {
            put(&mut t, IdL, x, s1(x), x);
        }
        put(&mut t, Xi, IdO, s2(Xi), Xi);
        put(&mut t, Eta, IdO, s2(Eta), Eta);
        put(&mut t, XiL, IdL, s2(XiL), XiL);
        put(&mut t, Theta, IdL, s2(Theta), Theta);
        put(&mut t, Theta, Eta, s_te, Xi);
        put(&mut t, Eta, Theta, s_et, XiL);
        if mu2_consistent(&t) {
            *table = t;
            return;
        }
    }
    panic!("no consistent unit signs for Yoneda variant ({s_te}, {s_et})");
}

/// Arity-3 associativity plus cyclicity of the induced c3, on every path.
fn mu2_consistent(t: &HashMap<Word, MuEntry>) -> bool {
    use super::basis::{enumerate_paths, word_parity};
    let mu = |a: Gen, b: Gen| -> Option<(Rat, Gen)> {
        t.get(&vec![a, b]).map(|e| (e.q.clone(), e.out))
    };
    for w in enumerate_paths(3) {
        // mu2(mu2(x,y),z) + (-1)^{p(x)} mu2(x, mu2(y,z)) = 0.
        let mut acc: Vec<(Rat, Gen)> = Vec::new();
        if let Some((q, g)) = mu(w[0], w[1]) {
            if let Some((q2, g2)) = mu(g, w[2]) {
                acc.push((q * q2, g2));
            }
        }
        if let Some((q, g)) = mu(w[1], w[2]) {
            if let Some((q2, g2)) = mu(w[0], g) {
                let s = if w[0].parity() { -1 } else { 1 };
                acc.push((q * q2 * rint(s), g2));
            }
        }
        let mut sum: HashMap<Gen, Rat> = HashMap::new();
        for (q, g) in acc {
            use num_traits::Zero;
            let e = sum.entry(g).or_insert_with(Rat::zero);
            *e += q;
        }
        if sum.values().any(|v| !num_traits::Zero::is_zero(v)) {
            return false;
        }
    }
    // Cyclicity of c3 on every cyclic 3-word.
    for w in super::basis::enumerate_cyclic_words(3) {
        let c3 = |x: Gen, y: Gen, z: Gen| -> Rat {
            match mu(x, y) {
                None => rint(0),
                Some((q, g)) => q * pairing(g, z),
            }
        };
        let lhs = c3(w[0], w[1], w[2]);
        let sgn = super::basis::cyclic_rotation_sign(w[2], &w[..2]);
        let rhs = c3(w[2], w[0], w[1]) * sgn.rat();
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Master-formula word `xiL^a eta xi^b theta xiL^c eta xi^d`.
fn master_word(a: u8, b: u8, c: u8, d: u8) -> Word {
    let mut w = Word::new();
    w.extend(std::iter::repeat(Gen::XiL).take(a as usize));
    w.push(Gen::Eta);
    w.extend(std::iter::repeat(Gen::Xi).take(b as usize));
    w.push(Gen::Theta);
    w.extend(std::iter::repeat(Gen::XiL).take(c as usize));
    w.push(Gen::Eta);
    w.extend(std::iter::repeat(Gen::Xi).take(d as usize));
    w
}

/// Generates the arity-`k` table as the cyclic closure of all master-formula
/// instances with `a+b+c+d = k-3`.
///
/// Each instance seeds a closed cyclic word of length `k+1` whose tensor value
/// at the seed rotation is `<q g eta, theta> = -q g`; rotating with Koszul
/// signs and reading off against the pairing fills every rotation of the
/// table. Conflicting assignments (the same argument word reached twice with
/// different values) are rejected — their absence is exactly the cyclic
/// consistency of the formula.
fn build_orbits(k: usize, table: &mut HashMap<Word, MuEntry>) -> Result<()> {
    let s = (k - 3) as u8;
    for a in 0..=s {
        for b in 0..=(s - a) {
            for c in 0..=(s - a - b) {
                let d = s - a - b - c;
                let q0 = GTable::master_coefficient(a, b, c, d);
                let gkey: GKey = (a + c, b + d);

                let mut closed = master_word(a, b, c, d);
                closed.push(Gen::Theta);
                // c-value at this rotation: output eta paired against theta.
                let mut value = -q0;

                for _ in 0..closed.len() {
                    let args: Word = closed[..closed.len() - 1].to_vec();
                    let last = *closed.last().unwrap();
                    let (dual, dual_sign) = pairing_dual(last);
                    let entry = MuEntry {
                        q: &value * rint(dual_sign as i64),
                        g: Some(gkey),
                        out: dual,
                    };
                    if let Some(prev) = table.get(&args) {
                        if *prev != entry {
                            return Err(Error::InconsistentConstraints(format!(
                                "cyclic closure conflict at arity {} on {:?}: {:?} vs {:?}",
                                k, args, prev, entry
                            )));
                        }
                    } else {
                        table.insert(args, entry);
                    }

                    // Rotate right: move the last element to the front.
                    let sgn = super::basis::cyclic_rotation_sign(last, &closed[..closed.len() - 1]);
                    if sgn == Sign::MINUS {
                        value = -value;
                    }
                    let l = closed.pop().unwrap();
                    closed.insert(0, l);
                }
            }
        }
    }
    Ok(())
}
