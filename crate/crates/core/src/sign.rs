//! Shared Koszul sign conventions.
//!
//! Every graded object in the crate carries its *shifted* parity (degree minus
//! one, mod 2). All signs — A-infinity relations, cyclic rotations, Hochschild
//! differentials, cochain insertions and ribbon-graph contractions — are
//! produced by the two helpers below so the convention cannot drift between
//! modules.

/// Parity of a shifted degree: `true` = odd.
pub type Parity = bool;

/// Sign (+1/-1) as an i8 for cheap multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sign(pub i8);

impl Sign {
    pub const PLUS: Sign = Sign(1);
    pub const MINUS: Sign = Sign(-1);

    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::MINUS
        } else {
            Sign::PLUS
        }
    }

    pub fn mul(self, rhs: Sign) -> Sign {
        Sign(self.0 * rhs.0)
    }

    pub fn rat(self) -> crate::Rat {
        crate::rint(self.0 as i64)
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign(self.0 * rhs.0)
    }
}

/// Koszul sign for swapping two adjacent blocks of total parities `p` and `q`.
pub fn block_swap(p: Parity, q: Parity) -> Sign {
    Sign::from_parity(p && q)
}

pub fn parity_sum<I: IntoIterator<Item = Parity>>(it: I) -> Parity {
    it.into_iter().fold(false, |a, b| a ^ b)
}

/// Koszul sign of the permutation taking `source` to `target`, where both are
/// sequences of identifiers with the given parities. Identifiers must be
/// unique; panics if the sequences are not permutations of each other.
pub fn permutation_sign(source: &[usize], target: &[usize], parities: &[Parity]) -> Sign {
    debug_assert_eq!(source.len(), target.len());
    let mut cur: Vec<usize> = source.to_vec();
    let mut sign = Sign::PLUS;
    for i in 0..target.len() {
        let want = target[i];
        let j = cur[i..]
            .iter()
            .position(|&x| x == want)
            .expect("target is a permutation of source")
            + i;
        // Move cur[j] left to position i by adjacent transpositions.
        let moving = parities[cur[j]];
        if moving {
            let crossed = cur[i..j].iter().filter(|&&x| parities[x]).count();
            if crossed % 2 == 1 {
                sign = sign * Sign::MINUS;
            }
        }
        let v = cur.remove(j);
        cur.insert(i, v);
    }
    sign
}

/// Sign for rotating a cyclic tensor one step: moving the last element (parity
/// `last`) in front of the rest (total parity `rest`).
pub fn rotation_sign(last: Parity, rest: Parity) -> Sign {
    block_swap(last, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_sign_matches_block_swaps() {
        // Swapping two odd elements is -1.
        let parities = vec![true, true];
        assert_eq!(permutation_sign(&[0, 1], &[1, 0], &parities), Sign::MINUS);
        // Odd past even is +1.
        let parities = vec![true, false];
        assert_eq!(permutation_sign(&[0, 1], &[1, 0], &parities), Sign::PLUS);
        // Three odds reversed: (0,1,2) -> (2,1,0) needs 3 transpositions of odd pairs.
        let parities = vec![true, true, true];
        assert_eq!(
            permutation_sign(&[0, 1, 2], &[2, 1, 0], &parities),
            Sign::MINUS
        );
    }
}
