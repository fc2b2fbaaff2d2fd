//! Linear algebra over a prime field `F_p`: canonical (RREF) subspaces,
//! flags of subspaces, enumeration, and random invertible matrices.
//!
//! Entries are stored as `u32` residues; products are formed in `u64`, so
//! any prime below 2^32 works, though everything interesting happens at
//! p ∈ {2, 3, 5}.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| d.saturating_mul(*d) <= p).all(|d| p % d != 0)
}

pub fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    add_mod(a, p - b % p, p)
}

/// Inverse by Fermat; `a` must be nonzero mod `p`.
fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// An element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: u32,
}

impl FpScalar {
    pub fn new(value: i64, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(FpScalar { value: value.rem_euclid(p as i64) as u32, p })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        (!self.is_zero()).then(|| FpScalar { value: inv_mod(self.value, self.p), p: self.p })
    }

    fn same_field(self, other: Self) {
        assert_eq!(self.p, other.p, "scalars from different fields");
    }
}

impl Add for FpScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FpScalar { value: add_mod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Sub for FpScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FpScalar { value: sub_mod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Mul for FpScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FpScalar { value: mul_mod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Neg for FpScalar {
    type Output = Self;
    fn neg(self) -> Self {
        FpScalar { value: sub_mod(0, self.value, self.p), p: self.p }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Square or rectangular matrix over `F_p`, row-major, entries reduced.
pub type FpMatrix = Vec<Vec<u32>>;

/// In-place reduced row echelon form; returns the pivot columns and drops
/// zero rows.
fn rref_in_place(rows: &mut Vec<Vec<u32>>, p: u32) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `F_p^n`, held as its RREF basis. Two values are equal
/// exactly when they describe the same subspace.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    p: u32,
    rows: Vec<Vec<u32>>,
}

impl Subspace {
    /// Row space of `rows`; entries are reduced mod `p` first.
    pub fn from_rows(n: usize, p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        check_prime(p)?;
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::AmbientMismatch(format!("row of length {} in ambient dimension {n}", bad.len())));
        }
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|v| v % p).collect()).collect();
        Ok(Self::from_reduced_rows(n, p, rows))
    }

    /// Caller guarantees `p` prime and entries reduced.
    fn from_reduced_rows(n: usize, p: u32, mut rows: Vec<Vec<u32>>) -> Self {
        rref_in_place(&mut rows, p);
        Subspace { n, p, rows }
    }

    pub fn zero(n: usize, p: u32) -> Self {
        Subspace { n, p, rows: Vec::new() }
    }

    pub fn full(n: usize, p: u32) -> Self {
        let rows = (0..n).map(|i| unit_vector(n, i)).collect();
        Subspace { n, p, rows }
    }

    /// Span of a single vector (the zero subspace for the zero vector).
    pub fn line(n: usize, p: u32, v: &[u32]) -> Self {
        Self::from_reduced_rows(n, p, vec![v.iter().map(|x| x % p).collect()])
    }

    /// Parses the printed form `"1,0,1;0,1,1"`; the empty string is the
    /// zero subspace.
    pub fn parse(s: &str, n: usize, p: u32) -> Result<Self> {
        let rows = s
            .split(';')
            .filter(|r| !r.trim().is_empty())
            .map(|r| {
                r.split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let sub = Self::from_rows(n, p, &rows)?;
        if sub.rows != rows {
            return Err(Error::Parse(format!("{s:?} is not in reduced row echelon form")));
        }
        Ok(sub)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().position(|&x| x != 0).expect("nonzero row")).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.p != other.p {
            return Err(Error::AmbientMismatch(format!("F_{}^{} vs F_{}^{}", self.p, self.n, other.p, other.n)));
        }
        Ok(())
    }

    /// `A + B`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.sum_unchecked(other))
    }

    pub(crate) fn sum_unchecked(&self, other: &Self) -> Self {
        if other.rows.is_empty() || self.contains_unchecked(other) {
            return self.clone();
        }
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Self::from_reduced_rows(self.n, self.p, rows)
    }

    /// Reduces `v` against the RREF basis; the remainder is zero iff
    /// `v` lies in the subspace.
    fn residue(&self, v: &[u32]) -> Vec<u32> {
        let mut v = v.to_vec();
        for row in &self.rows {
            let c = row.iter().position(|&x| x != 0).expect("nonzero row");
            let f = v[c];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = sub_mod(*x, mul_mod(f, y, self.p), self.p);
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        self.residue(v).iter().all(|&x| x == 0)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.contains_unchecked(other))
    }

    pub(crate) fn contains_unchecked(&self, other: &Self) -> bool {
        other.dim() <= self.dim() && other.rows.iter().all(|r| self.contains_vector(r))
    }

    /// Image under `g` acting on row vectors as column vectors, `v ↦ g v`.
    pub fn apply(&self, g: &FpMatrix) -> Self {
        let rows = self.rows.iter().map(|r| mat_vec(g, r, self.p)).collect();
        Self::from_reduced_rows(self.n, self.p, rows)
    }

    /// Coordinates of the members of `self` in the RREF basis of `host`,
    /// i.e. the image of `self` under the isomorphism `host ≅ F_p^{dim host}`.
    pub fn coordinates_in(&self, host: &Subspace) -> Result<Subspace> {
        host.check_compatible(self)?;
        if !host.contains_unchecked(self) {
            return Err(Error::InvalidArgument(format!("{self} is not contained in {host}")));
        }
        let pivots = host.pivots();
        let rows = self.rows.iter().map(|r| pivots.iter().map(|&c| r[c]).collect()).collect();
        Ok(Self::from_reduced_rows(host.dim(), self.p, rows))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn mat_vec(g: &FpMatrix, v: &[u32], p: u32) -> Vec<u32> {
    g.iter().map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, p), p))).collect()
}

/// A strictly increasing chain `A_1 ⊂ … ⊂ A_ℓ`.
///
/// `dim A_1` is normally 1, but chains above a fixed subspace `U` (used to
/// represent flags of `V/U`) start at `dim U + 1`; consecutive members
/// always differ by one dimension.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagChain {
    n: usize,
    p: u32,
    chain: Vec<Subspace>,
}

impl FlagChain {
    pub fn empty(n: usize, p: u32) -> Self {
        FlagChain { n, p, chain: Vec::new() }
    }

    /// Validates nesting, the one-step dimension increments, and that the
    /// chain starts in dimension 1.
    pub fn new(n: usize, p: u32, chain: Vec<Subspace>) -> Result<Self> {
        Self::above(&Subspace::zero(n, p), chain)
    }

    /// A chain of subspaces strictly containing `base`, starting at
    /// dimension `dim base + 1`.
    pub fn above(base: &Subspace, chain: Vec<Subspace>) -> Result<Self> {
        let mut prev = base;
        for (i, s) in chain.iter().enumerate() {
            prev.check_compatible(s)?;
            if s.dim() != base.dim() + i + 1 || !s.contains_unchecked(prev) {
                return Err(Error::InvalidArgument(format!("not a flag: member {} is {s}", i + 1)));
            }
            prev = s;
        }
        Ok(FlagChain { n: base.n, p: base.p, chain })
    }

    pub(crate) fn from_chain_unchecked(n: usize, p: u32, chain: Vec<Subspace>) -> Self {
        FlagChain { n, p, chain }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn members(&self) -> &[Subspace] {
        &self.chain
    }

    pub fn top(&self) -> Option<&Subspace> {
        self.chain.last()
    }

    pub fn into_members(self) -> Vec<Subspace> {
        self.chain
    }

    /// Parses the `|`-joined form.
    pub fn parse(s: &str, n: usize, p: u32) -> Result<Self> {
        let chain = s
            .split('|')
            .filter(|m| !m.trim().is_empty())
            .map(|m| Subspace::parse(m, n, p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, p, chain)
    }
}

impl fmt::Display for FlagChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.chain.iter().map(Subspace::to_string).collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl fmt::Debug for FlagChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for FlagChain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Every vector of `F_p^n` in lexicographic order.
pub fn all_vectors(n: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    for pos in (0..n).rev() {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w[pos] = x;
                    w
                })
            })
            .collect();
    }
    out.sort();
    out
}

/// All `d`-dimensional subspaces of `F_p^n` (containing `above` when
/// given), sorted.
pub fn enumerate_subspaces(n: usize, p: u32, d: usize, above: Option<&Subspace>) -> Result<Vec<Subspace>> {
    check_prime(p)?;
    if d > n {
        return Err(Error::InvalidArgument(format!("dimension {d} exceeds ambient {n}")));
    }
    if let Some(u) = above {
        if u.n != n || u.p != p {
            return Err(Error::AmbientMismatch(format!("base lives in F_{}^{}", u.p, u.n)));
        }
        if u.dim() > d {
            return Err(Error::InvalidArgument(format!("base of dimension {} exceeds {d}", u.dim())));
        }
    }
    let mut out: Vec<Subspace> = pivot_sets(n, d)
        .into_par_iter()
        .flat_map_iter(|pivots| rref_with_pivots(n, p, &pivots))
        .filter(|s| above.is_none_or(|u| s.contains_unchecked(u)))
        .collect();
    out.sort();
    Ok(out)
}

fn pivot_sets(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            go(c + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// All RREF matrices with the given pivot columns: each row has a 1 at its
/// pivot, zeros at other pivots and left of its pivot, and a free entry at
/// every later non-pivot column.
fn rref_with_pivots(n: usize, p: u32, pivots: &[usize]) -> Vec<Subspace> {
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &pc)| (pc + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
        .collect();
    let total = (p as usize).pow(free.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut rows: Vec<Vec<u32>> = pivots.iter().map(|&c| unit_vector(n, c)).collect();
            for &(r, c) in &free {
                rows[r][c] = (code % p as usize) as u32;
                code /= p as usize;
            }
            Subspace { n, p, rows }
        })
        .collect()
}

/// Subspaces of dimension `dim a + 1` containing `a`.
pub fn covers(a: &Subspace) -> Vec<Subspace> {
    let set: BTreeSet<Subspace> = all_vectors(a.n, a.p)
        .into_iter()
        .filter(|v| !a.contains_vector(v))
        .map(|v| {
            let mut rows = a.rows.clone();
            rows.push(v);
            Subspace::from_reduced_rows(a.n, a.p, rows)
        })
        .collect();
    set.into_iter().collect()
}

/// All length-`ℓ` flags, sorted.
///
/// With `above = Some(U)` and `u = dim U ≤ ℓ`, only flags whose `u`-th
/// member equals `U` are returned.
pub fn enumerate_flags(n: usize, p: u32, len: usize, above: Option<&Subspace>) -> Result<Vec<FlagChain>> {
    check_prime(p)?;
    if len > n {
        return Err(Error::InvalidArgument(format!("flag length {len} exceeds ambient {n}")));
    }
    if let Some(u) = above {
        if u.n != n || u.p != p {
            return Err(Error::AmbientMismatch(format!("base lives in F_{}^{}", u.p, u.n)));
        }
        if u.dim() > len {
            return Err(Error::InvalidArgument(format!("base of dimension {} exceeds {len}", u.dim())));
        }
    }
    let mut partial: Vec<Vec<Subspace>> = vec![Vec::new()];
    for i in 1..=len {
        partial = partial
            .into_par_iter()
            .flat_map_iter(|chain| {
                let prev = chain.last().cloned().unwrap_or_else(|| Subspace::zero(n, p));
                covers(&prev)
                    .into_iter()
                    .filter(|s| match above {
                        Some(u) if i < u.dim() => u.contains_unchecked(s),
                        Some(u) if i == u.dim() => s == u,
                        _ => true,
                    })
                    .map(move |s| {
                        let mut c = chain.clone();
                        c.push(s);
                        c
                    })
            })
            .collect();
    }
    let mut out: Vec<FlagChain> = partial.into_iter().map(|c| FlagChain { n, p, chain: c }).collect();
    out.sort();
    Ok(out)
}

/// Length-`len` chains strictly above `base`, starting at `dim base + 1`.
/// These stand for the length-`len` flags of `V/base`.
pub fn enumerate_chains_above(base: &Subspace, len: usize) -> Result<Vec<FlagChain>> {
    if base.dim() + len > base.n {
        return Err(Error::InvalidArgument(format!(
            "chains of length {len} above a {}-dimensional subspace of F_p^{}",
            base.dim(),
            base.n
        )));
    }
    let mut partial: Vec<Vec<Subspace>> = vec![Vec::new()];
    for _ in 0..len {
        partial = partial
            .into_iter()
            .flat_map(|chain| {
                let prev = chain.last().unwrap_or(base).clone();
                covers(&prev).into_iter().map(move |s| {
                    let mut c = chain.clone();
                    c.push(s);
                    c
                })
            })
            .collect();
    }
    let mut out: Vec<FlagChain> = partial.into_iter().map(|c| FlagChain { n: base.n, p: base.p, chain: c }).collect();
    out.sort();
    Ok(out)
}

/// Determinant mod `p` by elimination.
pub fn determinant(m: &FpMatrix, p: u32) -> u32 {
    let n = m.len();
    let mut a: Vec<Vec<u32>> = m.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let mut det = 1u32;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if r != c {
            a.swap(r, c);
            det = sub_mod(0, det, p);
        }
        det = mul_mod(det, a[c][c], p);
        let inv = inv_mod(a[c][c], p);
        for r in c + 1..n {
            let f = mul_mod(a[r][c], inv, p);
            if f != 0 {
                for k in c..n {
                    let v = mul_mod(f, a[c][k], p);
                    a[r][k] = sub_mod(a[r][k], v, p);
                }
            }
        }
    }
    det
}

pub fn is_invertible(m: &FpMatrix, p: u32) -> bool {
    m.iter().all(|r| r.len() == m.len()) && determinant(m, p) != 0
}

/// A uniformly random invertible `n × n` matrix, deterministic in `seed`
/// (rejection sampling on ChaCha8).
pub fn random_invertible(n: usize, p: u32, seed: u64) -> Result<FpMatrix> {
    check_prime(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m: FpMatrix = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
        if is_invertible(&m, p) {
            return Ok(m);
        }
    }
}
