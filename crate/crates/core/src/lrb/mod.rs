//! The left-regular band monoids: injective words `ℱ_n`, flags
//! `ℱ_n^{(q)}`, Brown's vector sequences, and the checks on their quotient
//! and covering monoids.

mod algebra;
mod flags;
mod remarks;
mod vecseq;
mod words;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

pub use algebra::AlgebraElement;
pub use flags::{act_gl, mul_flag, FlagMonoid};
pub use remarks::{verify_remark_monoids, RemarkCheck, RemarkReport};
pub use vecseq::{VecSeq, VecSeqMonoid};
pub use words::{act_perm, mul_word, InjWord, WordMonoid};

use crate::error::Result;
use crate::fqlinalg::FlagChain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonoidKind {
    Words,
    Flags,
    VecSeq,
}

impl fmt::Display for MonoidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonoidKind::Words => "words",
            MonoidKind::Flags => "flags",
            MonoidKind::VecSeq => "vecseq",
        })
    }
}

/// A finite monoid graded by length, where every element of length `ℓ` is
/// a product of `ℓ` generators of length 1.
pub trait Monoid: Sync {
    type Elem: Clone + Eq + Ord + Hash + fmt::Display + fmt::Debug + Serialize + Send + Sync;

    fn kind(&self) -> MonoidKind;
    fn ambient(&self) -> usize;
    fn modulus(&self) -> Option<u32>;
    /// Length of the longest elements (the chambers).
    fn rank(&self) -> usize;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn length(&self, a: &Self::Elem) -> usize;
    /// The length-`len` elements in sorted order.
    fn stratum(&self, len: usize) -> Vec<Self::Elem>;

    /// All elements, by length and then in sorted order.
    fn elements(&self) -> Vec<Self::Elem> {
        (0..=self.rank()).flat_map(|l| self.stratum(l)).collect()
    }

    fn generators(&self) -> Vec<Self::Elem> {
        self.stratum(1)
    }
}

/// Dense indexing of a list of monoid elements.
#[derive(Clone, Debug)]
pub struct Basis<E> {
    elems: Vec<E>,
    index: HashMap<E, usize>,
}

impl<E: Clone + Eq + Hash> Basis<E> {
    pub fn new(elems: Vec<E>) -> Self {
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect::<HashMap<_, _>>();
        assert_eq!(index.len(), elems.len(), "basis elements must be distinct");
        Basis { elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elem(&self, i: usize) -> &E {
        &self.elems[i]
    }

    pub fn elems(&self) -> &[E] {
        &self.elems
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }
}

impl<E: Clone + Eq + Hash> Basis<E> {
    pub fn full<M: Monoid<Elem = E>>(m: &M) -> Self {
        Self::new(m.elements())
    }

    pub fn stratum<M: Monoid<Elem = E>>(m: &M, len: usize) -> Self {
        Self::new(m.stratum(len))
    }
}

/// `ℱ_n`, by length then lexicographically.
pub fn enumerate_monoid(n: usize) -> Vec<InjWord> {
    WordMonoid::new(n).elements()
}

/// `ℱ_n^{(q)}` over `F_p`, by length then lexicographically on RREF entries.
pub fn enumerate_monoid_q(n: usize, p: u32) -> Result<Vec<FlagChain>> {
    Ok(FlagMonoid::new(n, p)?.elements())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidDump {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    pub strata: Vec<StratumDump>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumDump {
    pub length: usize,
    pub elements: Vec<String>,
}

pub fn dump_monoid<M: Monoid>(m: &M) -> MonoidDump {
    MonoidDump {
        n: m.ambient(),
        q: m.modulus(),
        strata: (0..=m.rank())
            .map(|length| StratumDump { length, elements: m.stratum(length).iter().map(ToString::to_string).collect() })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::fqlinalg::random_invertible;
    use crate::perm::all_permutations;
    use crate::qnums::q_factorial;

    fn check_lrb_axioms<M: Monoid>(m: &M, elems: &[M::Elem]) {
        for a in elems {
            assert_eq!(&m.mul(a, a), a, "idempotence fails at {a}");
            for b in elems {
                let ab = m.mul(a, b);
                assert_eq!(m.mul(&ab, a), ab, "left-regularity fails at {a}, {b}");
                assert!(m.length(&ab) >= m.length(a).max(m.length(b)));
            }
        }
    }

    fn check_associativity<M: Monoid>(m: &M, elems: &[M::Elem], seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..500 {
            let [a, b, c] = [0; 3].map(|_| &elems[rng.gen_range(0..elems.len())]);
            assert_eq!(m.mul(&m.mul(a, b), c), m.mul(a, &m.mul(b, c)));
        }
    }

    #[test]
    fn word_monoid_sizes() {
        assert_eq!(
            enumerate_monoid(2).iter().map(ToString::to_string).collect::<Vec<_>>(),
            ["()", "(1)", "(2)", "(1,2)", "(2,1)"]
        );
        for n in 0..=6 {
            let m = WordMonoid::new(n);
            for l in 0..=n {
                let expect: usize = (n - l + 1..=n).product();
                assert_eq!(m.stratum(l).len(), expect);
            }
        }
        assert_eq!(enumerate_monoid(3).len(), 16);
        assert_eq!(enumerate_monoid(5).len(), 326);
    }

    #[test]
    fn flag_monoid_sizes() {
        assert_eq!(enumerate_monoid_q(2, 2).unwrap().len(), 7);
        assert_eq!(enumerate_monoid_q(4, 2).unwrap().len(), 751);
        for p in [2u32, 3] {
            for n in 0..=3 {
                let m = FlagMonoid::new(n, p).unwrap();
                for l in 0..=n {
                    let expect = q_factorial(n).div_exact(&q_factorial(n - l)).unwrap().eval(p as i128);
                    assert_eq!(m.stratum(l).len() as i128, expect);
                }
            }
        }
    }

    #[test]
    fn lrb_axioms_words() {
        for n in 0..=4 {
            let m = WordMonoid::new(n);
            let elems = m.elements();
            check_lrb_axioms(&m, &elems);
            check_associativity(&m, &elems, n as u64);
        }
    }

    #[test]
    fn lrb_axioms_flags() {
        for (n, p) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            let m = FlagMonoid::new(n, p).unwrap();
            let elems = m.elements();
            check_lrb_axioms(&m, &elems);
            check_associativity(&m, &elems, 17);
        }
        let m = FlagMonoid::new(4, 2).unwrap();
        let elems = m.elements();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let sample: Vec<_> = (0..120).map(|_| elems[rng.gen_range(0..elems.len())].clone()).collect();
        check_lrb_axioms(&m, &sample);
        check_associativity(&m, &elems, 4);
    }

    #[test]
    fn permutation_action_is_by_automorphisms() {
        for n in 0..=3 {
            let elems = enumerate_monoid(n);
            for g in all_permutations(n) {
                for a in &elems {
                    for b in &elems {
                        let lhs = act_perm(&g, &mul_word(a, b)).unwrap();
                        let rhs = mul_word(&act_perm(&g, a).unwrap(), &act_perm(&g, b).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        let elems = enumerate_monoid(4);
        let perms = all_permutations(4);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let g = &perms[rng.gen_range(0..perms.len())];
            let a = &elems[rng.gen_range(0..elems.len())];
            let b = &elems[rng.gen_range(0..elems.len())];
            let lhs = act_perm(g, &mul_word(a, b)).unwrap();
            assert_eq!(lhs, mul_word(&act_perm(g, a).unwrap(), &act_perm(g, b).unwrap()));
        }
    }

    #[test]
    fn gl_action_is_by_automorphisms() {
        let elems = enumerate_monoid_q(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        for seed in 0..100 {
            let g = random_invertible(3, 2, seed).unwrap();
            let a = &elems[rng.gen_range(0..elems.len())];
            let b = &elems[rng.gen_range(0..elems.len())];
            let lhs = act_gl(&g, &mul_flag(a, b).unwrap()).unwrap();
            let rhs = mul_flag(&act_gl(&g, a).unwrap(), &act_gl(&g, b).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        let elems = enumerate_monoid_q(4, 2).unwrap();
        for seed in 0..50 {
            let g = random_invertible(4, 2, seed).unwrap();
            let a = &elems[rng.gen_range(0..elems.len())];
            let b = &elems[rng.gen_range(0..elems.len())];
            let lhs = act_gl(&g, &mul_flag(a, b).unwrap()).unwrap();
            assert_eq!(lhs, mul_flag(&act_gl(&g, a).unwrap(), &act_gl(&g, b).unwrap()).unwrap());
        }
    }

    #[test]
    fn dump_format() {
        let dump = serde_json::to_string(&dump_monoid(&WordMonoid::new(1))).unwrap();
        assert_eq!(dump, r#"{"n":1,"strata":[{"length":0,"elements":["()"]},{"length":1,"elements":["(1)"]}]}"#);
        let dump = serde_json::to_value(dump_monoid(&FlagMonoid::new(1, 2).unwrap())).unwrap();
        assert_eq!(dump["q"], 2);
        assert_eq!(dump["strata"][1]["elements"][0], "1");
    }
}
