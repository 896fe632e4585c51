use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::ainf::{Gen, Word};
use crate::qmod::FormFraction;
use crate::{Error, Rat, Result};

/// Finite form-fraction combination of cyclically composable words, in the
/// normalized Hochschild complex.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Chain {
    terms: BTreeMap<Word, FormFraction>,
}

/// Homological degree of a word: `-1 - sum of shifted degrees`.
pub fn word_hdegree(word: &[Gen]) -> i64 {
    -1 - crate::ainf::word_sdeg(word)
}

/// True when the word has a unit in a non-marked slot (degenerate in the
/// normalized complex).
pub fn is_degenerate(word: &[Gen]) -> bool {
    word.iter().skip(1).any(|g| g.is_unit())
}

impl Chain {
    pub fn zero() -> Chain {
        Chain::default()
    }

    /// Single term; the word must be cyclically composable.
    pub fn term(coeff: FormFraction, word: Word) -> Result<Chain> {
        if !crate::ainf::is_cyclic_word(&word) {
            return Err(Error::NotComposable);
        }
        let mut c = Chain::zero();
        c.add_term(coeff, word);
        Ok(c)
    }

    /// Adds a term, dropping zero coefficients and degenerate words.
    pub fn add_term(&mut self, coeff: FormFraction, word: Word) {
        if coeff.is_zero() || is_degenerate(&word) {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = &*e.get() + &coeff;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &FormFraction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &[Gen]) -> FormFraction {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(FormFraction::zero)
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &FormFraction) -> Chain {
        if c.is_zero() {
            return Chain::zero();
        }
        let mut out = Chain::zero();
        for (w, v) in &self.terms {
            out.add_term(c * v, w.clone());
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> Chain {
        self.scale(&FormFraction::from_rat(c.clone()))
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        for (w, v) in &other.terms {
            out.add_term(v.clone(), w.clone());
        }
        out
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        for (w, v) in &other.terms {
            out.add_term(-v, w.clone());
        }
        out
    }

    /// Homological degree when all terms agree; `None` for zero chains.
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut deg = None;
        for w in self.terms.keys() {
            let d = word_hdegree(w);
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::Other(format!(
                        "chain mixes degrees {} and {}",
                        d0, d
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Twice the total weight (coefficient plus word) when homogeneous.
    pub fn weight2(&self) -> Result<Option<i64>> {
        let mut wt = None;
        for (w, c) in &self.terms {
            let t = 2 * c.weight()? + crate::ainf::word_weight2(w);
            match wt {
                None => wt = Some(t),
                Some(w0) if w0 != t => {
                    return Err(Error::Other(format!(
                        "chain mixes weights {}/2 and {}/2",
                        w0, t
                    )))
                }
                _ => {}
            }
        }
        Ok(wt)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let word = w.iter().map(|g| g.name()).collect::<Vec<_>>().join("⊗");
            write!(f, "({})·{}", c, word)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Chains extended by powers of the degree minus-two variable `u`, truncated
/// at a configurable order (default 3: the lift needs `xi + alpha u + beta u^2`).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UChain {
    parts: BTreeMap<i32, Chain>,
    pub truncation: i32,
}

pub const DEFAULT_U_ORDER: i32 = 3;

impl UChain {
    pub fn new(truncation: i32) -> UChain {
        UChain { parts: BTreeMap::new(), truncation }
    }

    pub fn from_chain(c: Chain, upow: i32, truncation: i32) -> UChain {
        let mut u = UChain::new(truncation);
        u.set(upow, c);
        u
    }

    pub fn set(&mut self, upow: i32, c: Chain) {
        if upow < self.truncation && !c.is_zero() {
            self.parts.insert(upow, c);
        }
    }

    pub fn add_part(&mut self, upow: i32, c: &Chain) {
        if upow >= self.truncation || c.is_zero() {
            return;
        }
        let cur = self.parts.entry(upow).or_insert_with(Chain::zero);
        *cur = cur.add(c);
        if cur.is_zero() {
            self.parts.remove(&upow);
        }
    }

    pub fn part(&self, upow: i32) -> Chain {
        self.parts.get(&upow).cloned().unwrap_or_else(Chain::zero)
    }

    pub fn parts(&self) -> impl Iterator<Item = (&i32, &Chain)> {
        self.parts.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add(&self, other: &UChain) -> UChain {
        let mut out = self.clone();
        out.truncation = self.truncation.min(other.truncation);
        for (k, c) in &other.parts {
            out.add_part(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &UChain) -> UChain {
        let mut out = self.clone();
        out.truncation = self.truncation.min(other.truncation);
        for (k, c) in &other.parts {
            out.add_part(*k, &c.scale_rat(&crate::rint(-1)));
        }
        out
    }
}

impl fmt::Debug for UChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.parts {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "u^{}·[{}]", k, c)?;
        }
        Ok(())
    }
}

/// Chain JSON: `{"terms":[{"coeff":"<fraction>","word":["idL","eta",..]}]}`.
pub fn chain_to_json(c: &Chain) -> Value {
    let terms: Vec<Value> = c
        .terms()
        .map(|(w, v)| {
            json!({
                "coeff": format!("{}", v),
                "word": w.iter().map(|g| g.name()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "terms": terms })
}

pub fn chain_from_json(v: &Value) -> Result<Chain> {
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("chain JSON needs a terms array".into()))?;
    let mut out = Chain::zero();
    for t in terms {
        let coeff = t
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("term needs a coeff string".into()))?;
        let word_v = t
            .get("word")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("term needs a word array".into()))?;
        let mut word = Word::new();
        for g in word_v {
            let s = g
                .as_str()
                .ok_or_else(|| Error::Parse("word entries are strings".into()))?;
            word.push(
                Gen::from_name(s).ok_or_else(|| Error::Parse(format!("unknown generator {s}")))?,
            );
        }
        let coeff = crate::qmod::parse_form_fraction(coeff)?;
        if !crate::ainf::is_cyclic_word(&word) {
            return Err(Error::NotComposable);
        }
        out.add_term(coeff, word);
    }
    Ok(out)
}

/// UChain JSON adds a `upow` per term block.
pub fn uchain_to_json(u: &UChain) -> Value {
    let blocks: Vec<Value> = u
        .parts()
        .map(|(k, c)| {
            let mut v = chain_to_json(c);
            v.as_object_mut()
                .unwrap()
                .insert("upow".into(), json!(k));
            v
        })
        .collect();
    json!({ "blocks": blocks, "truncation": u.truncation })
}
