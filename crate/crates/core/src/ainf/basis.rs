use std::fmt;

use crate::sign::Parity;
use crate::{rint, Rat};

/// The two objects of the quiver: the structure sheaf and the degree-one line
/// bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ob {
    O,
    L,
}

/// The six basis morphisms of the algebra.
///
/// Degrees: `IdO, IdL, Theta` in cohomological degree 0; `Xi, XiL, Eta` in
/// degree 1. Weights (doubled to stay integral): 0, 0, 1, 2, 2, 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    IdO,
    IdL,
    Theta,
    Eta,
    Xi,
    XiL,
}

pub const GENERATORS: [Gen; 6] = [Gen::IdO, Gen::IdL, Gen::Theta, Gen::Eta, Gen::Xi, Gen::XiL];

impl Gen {
    /// Source object, reading words left to right as composable paths.
    pub fn source(self) -> Ob {
        match self {
            Gen::IdO | Gen::Xi | Gen::Theta => Ob::O,
            Gen::IdL | Gen::XiL | Gen::Eta => Ob::L,
        }
    }

    pub fn target(self) -> Ob {
        match self {
            Gen::IdO | Gen::Xi | Gen::Eta => Ob::O,
            Gen::IdL | Gen::XiL | Gen::Theta => Ob::L,
        }
    }

    /// Cohomological degree (0 or 1).
    pub fn degree(self) -> i64 {
        match self {
            Gen::IdO | Gen::IdL | Gen::Theta => 0,
            Gen::Xi | Gen::XiL | Gen::Eta => 1,
        }
    }

    /// Shifted degree `|x|' = |x| - 1`.
    pub fn sdeg(self) -> i64 {
        self.degree() - 1
    }

    /// Shifted parity: identities and theta are odd, the degree-one morphisms
    /// even.
    pub fn parity(self) -> Parity {
        self.degree() == 0
    }

    /// Twice the modular weight (so theta and eta carry 1).
    pub fn weight2(self) -> i64 {
        match self {
            Gen::IdO | Gen::IdL => 0,
            Gen::Theta | Gen::Eta => 1,
            Gen::Xi | Gen::XiL => 2,
        }
    }

    pub fn is_unit(self) -> bool {
        matches!(self, Gen::IdO | Gen::IdL)
    }

    pub fn unit_for(ob: Ob) -> Gen {
        match ob {
            Ob::O => Gen::IdO,
            Ob::L => Gen::IdL,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gen::IdO => "idO",
            Gen::IdL => "idL",
            Gen::Theta => "theta",
            Gen::Eta => "eta",
            Gen::Xi => "xi",
            Gen::XiL => "xiL",
        }
    }

    pub fn from_name(s: &str) -> Option<Gen> {
        Some(match s {
            "idO" => Gen::IdO,
            "idL" => Gen::IdL,
            "theta" => Gen::Theta,
            "eta" => Gen::Eta,
            "xi" => Gen::Xi,
            "xiL" => Gen::XiL,
            _ => return None,
        })
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// The skew pairing of degree one. Exactly six nonzero values:
/// `<xi, idO> = <xiL, idL> = -1`, `<idO, xi> = <idL, xiL> = 1`,
/// `<theta, eta> = 1`, `<eta, theta> = -1`.
pub fn pairing(a: Gen, b: Gen) -> Rat {
    use Gen::*;
    let v = match (a, b) {
        (Xi, IdO) | (XiL, IdL) | (Eta, Theta) => -1,
        (IdO, Xi) | (IdL, XiL) | (Theta, Eta) => 1,
        _ => 0,
    };
    rint(v)
}

/// For each generator `y` the unique basis element `w` with `<w, y> = 1`,
/// together with that (trivial) normalization baked in: returns `(w, sign)`
/// such that `<sign * w, y> = 1`.
pub fn pairing_dual(y: Gen) -> (Gen, i8) {
    use Gen::*;
    match y {
        Xi => (IdO, 1),
        XiL => (IdL, 1),
        Eta => (Theta, 1),
        IdO => (Xi, -1),
        IdL => (XiL, -1),
        Theta => (Eta, -1),
    }
}

/// A tensor word of generators, read left to right as a composable path.
pub type Word = Vec<Gen>;

/// True when consecutive factors compose (target of each equals source of the
/// next); does not require the word to close up cyclically.
pub fn is_path(word: &[Gen]) -> bool {
    word.windows(2).all(|w| w[0].target() == w[1].source())
}

/// True when the word is a composable cycle: a path whose end matches its
/// start.
pub fn is_cyclic_word(word: &[Gen]) -> bool {
    !word.is_empty() && is_path(word) && word.last().unwrap().target() == word[0].source()
}

/// Sum of shifted parities of a word.
pub fn word_parity(word: &[Gen]) -> Parity {
    word.iter().fold(false, |a, g| a ^ g.parity())
}

/// Rotation sign rule for cyclic tensors: the Koszul factor picked up when
/// the last argument moves to the front. Temporarily parametrized through the
/// environment while the printed fixture pins the convention:
/// `CATGW_ROT` in {"s0" (shifted), "s1" (shifted plus a global flip),
/// "u0" (unshifted), "u1"}.
pub fn cyclic_rotation_sign(last: Gen, rest: &[Gen]) -> crate::sign::Sign {
    let mode = std::env::var("CATGW_ROT").unwrap_or_else(|_| "s0".into());
    let (shifted, extra) = match mode.as_str() {
        "s1" => (true, true),
        "u0" => (false, false),
        "u1" => (false, true),
        _ => (true, false),
    };
    let par = |g: Gen| if shifted { g.parity() } else { g.degree() % 2 == 1 };
    let rest_par = rest.iter().fold(false, |a, &g| a ^ par(g));
    let mut s = crate::sign::Sign::from_parity(par(last) && rest_par);
    if extra {
        s = s * crate::sign::Sign::MINUS;
    }
    s
}

/// Sum of shifted degrees.
pub fn word_sdeg(word: &[Gen]) -> i64 {
    word.iter().map(|g| g.sdeg()).sum()
}

/// Twice the total weight of the generators in the word.
pub fn word_weight2(word: &[Gen]) -> i64 {
    word.iter().map(|g| g.weight2()).sum()
}

/// All composable paths of the given length (not necessarily cyclic).
pub fn enumerate_paths(len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    if len == 0 {
        return out;
    }
    let mut stack: Vec<Word> = GENERATORS.iter().map(|&g| vec![g]).collect();
    while let Some(w) = stack.pop() {
        if w.len() == len {
            out.push(w);
            continue;
        }
        let t = w.last().unwrap().target();
        for &g in &GENERATORS {
            if g.source() == t {
                let mut w2 = w.clone();
                w2.push(g);
                stack.push(w2);
            }
        }
    }
    out
}

/// All cyclically composable words of the given length; the count is
/// `3^len + 1` (trace of the transfer matrix `[[2,1],[1,2]]` to the power len).
pub fn enumerate_cyclic_words(len: usize) -> Vec<Word> {
    enumerate_paths(len)
        .into_iter()
        .filter(|w| w.last().unwrap().target() == w[0].source())
        .collect()
}
