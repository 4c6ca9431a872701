//! Sparse integer polynomials with hard per-variable exponent caps.
//!
//! Monomials are stored as packed integer keys in a sorted vector. Variable 0
//! occupies the most significant field, so integer order on keys is the
//! lexicographic order on exponent vectors. Multiplying by `x_a - x_b` adds a
//! constant to every key, which preserves order, so each step is a linear
//! merge of two shifted copies of the term list.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest exponent an [`ExponentVector`] entry may hold.
pub const MAX_EXPONENT: u8 = 63;

/// Term lists above this length are merged in parallel chunks.
const PARALLEL_THRESHOLD: usize = 1 << 16;
const PARALLEL_CHUNKS: usize = 64;

/// Exponents of one monomial, one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u8>);

impl ExponentVector {
    pub fn new(exps: Vec<u8>) -> Result<Self> {
        if let Some(&e) = exps.iter().find(|&&e| e > MAX_EXPONENT) {
            return Err(Error::ExponentTooLarge(e as u32));
        }
        Ok(Self(exps))
    }

    pub fn zeros(num_vars: usize) -> Self {
        Self(vec![0; num_vars])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Component-wise `self <= caps`.
    pub fn within(&self, caps: &CapVector) -> bool {
        self.0.len() == caps.0.len() && self.0.iter().zip(&caps.0).all(|(e, c)| e <= c)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Maximum allowed exponent per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CapVector(Vec<u8>);

impl CapVector {
    pub fn new(caps: Vec<u8>) -> Result<Self> {
        if let Some(&c) = caps.iter().find(|&&c| c > MAX_EXPONENT) {
            return Err(Error::ExponentTooLarge(c as u32));
        }
        Ok(Self(caps))
    }

    pub fn uniform(num_vars: usize, cap: u8) -> Result<Self> {
        Self::new(vec![cap; num_vars])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().map(|&c| c as u32).sum()
    }

    /// Component-wise minimum with `target`.
    pub fn tightened(&self, target: &ExponentVector) -> Self {
        Self(self.0.iter().zip(target.as_slice()).map(|(&c, &t)| c.min(t)).collect())
    }
}

/// The factor `x_a - x_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BinomialTerm {
    pub a: usize,
    pub b: usize,
}

impl BinomialTerm {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::DegenerateTerm(a));
        }
        Ok(Self { a, b })
    }

    pub fn swapped(self) -> Self {
        Self { a: self.b, b: self.a }
    }

    pub fn check(&self, num_vars: usize) -> Result<()> {
        if self.a == self.b {
            return Err(Error::DegenerateTerm(self.a));
        }
        for idx in [self.a, self.b] {
            if idx >= num_vars {
                return Err(Error::VariableOutOfRange { index: idx, num_vars });
            }
        }
        Ok(())
    }
}

impl fmt::Display for BinomialTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x{} - x{})", self.a, self.b)
    }
}

/// Bit layout of a packed monomial key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Layout {
    num_vars: usize,
    bits: u32,
}

impl Layout {
    fn for_caps(caps: &CapVector) -> Self {
        let max = caps.as_slice().iter().copied().max().unwrap_or(0) as u32;
        let bits = (u32::BITS - max.leading_zeros()).max(1);
        Self { num_vars: caps.len(), bits }
    }

    fn width(&self) -> usize {
        self.num_vars * self.bits as usize
    }

    fn shift(&self, var: usize) -> u32 {
        (self.num_vars - 1 - var) as u32 * self.bits
    }

    fn mask(&self) -> u128 {
        (1u128 << self.bits) - 1
    }
}

/// Packed monomial keys. `u64` when the layout fits, `u128` otherwise.
trait Key: Copy + Ord + Send + Sync + 'static {
    fn from_u128(v: u128) -> Self;
    fn to_u128(self) -> u128;
    fn wrapping_add(self, other: Self) -> Self;
}

impl Key for u64 {
    fn from_u128(v: u128) -> Self {
        v as u64
    }
    fn to_u128(self) -> u128 {
        self as u128
    }
    fn wrapping_add(self, other: Self) -> Self {
        u64::wrapping_add(self, other)
    }
}

impl Key for u128 {
    fn from_u128(v: u128) -> Self {
        v
    }
    fn to_u128(self) -> u128 {
        self
    }
    fn wrapping_add(self, other: Self) -> Self {
        u128::wrapping_add(self, other)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Terms {
    Narrow(Vec<(u64, i64)>),
    Wide(Vec<(u128, i64)>),
}

/// Sparse polynomial over the integers whose monomials never exceed `caps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CappedPolynomial {
    caps: CapVector,
    layout: Layout,
    terms: Terms,
}

impl CappedPolynomial {
    /// The constant polynomial 1.
    pub fn one(num_vars: usize, caps: CapVector) -> Result<Self> {
        Self::from_terms(num_vars, caps, [(ExponentVector::zeros(num_vars), 1)])
    }

    /// The zero polynomial.
    pub fn zero(num_vars: usize, caps: CapVector) -> Result<Self> {
        Self::from_terms(num_vars, caps, std::iter::empty())
    }

    /// Builds a polynomial from explicit monomials. Cap-violating monomials
    /// are dropped; repeated monomials are summed.
    pub fn from_terms<I>(num_vars: usize, caps: CapVector, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, i64)>,
    {
        if caps.len() != num_vars {
            return Err(Error::LengthMismatch {
                what: "caps",
                expected: num_vars,
                found: caps.len(),
            });
        }
        let layout = Layout::for_caps(&caps);
        if layout.width() > 127 {
            return Err(Error::KeyWidth { num_vars, bits: layout.bits });
        }
        let mut packed: Vec<(u128, i64)> = Vec::new();
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::LengthMismatch {
                    what: "exponent vector",
                    expected: num_vars,
                    found: e.len(),
                });
            }
            if c != 0 && e.within(&caps) {
                packed.push((pack(&layout, e.as_slice()), c));
            }
        }
        packed.sort_unstable_by_key(|&(k, _)| k);
        let mut merged: Vec<(u128, i64)> = Vec::with_capacity(packed.len());
        for (k, c) in packed {
            match merged.last_mut() {
                Some((lk, lc)) if *lk == k => *lc = lc.checked_add(c).ok_or(Error::Overflow)?,
                _ => merged.push((k, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        let terms = if layout.width() <= 64 {
            Terms::Narrow(merged.into_iter().map(|(k, c)| (k as u64, c)).collect())
        } else {
            Terms::Wide(merged)
        };
        Ok(Self { caps, layout, terms })
    }

    pub fn num_vars(&self) -> usize {
        self.layout.num_vars
    }

    pub fn caps(&self) -> &CapVector {
        &self.caps
    }

    /// Number of stored (nonzero) monomials.
    pub fn len(&self) -> usize {
        match &self.terms {
            Terms::Narrow(t) => t.len(),
            Terms::Wide(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Returns `(x_a - x_b) * self`, discarding monomials that exceed the caps.
    pub fn multiply_binomial(&self, t: BinomialTerm) -> Result<Self> {
        let mut out = self.clone();
        out.multiply_binomial_in_place(t)?;
        Ok(out)
    }

    pub(crate) fn multiply_binomial_in_place(&mut self, t: BinomialTerm) -> Result<()> {
        t.check(self.num_vars())?;
        let step = Step::new(&self.layout, &self.caps, t);
        match &mut self.terms {
            Terms::Narrow(v) => *v = step.apply(v)?,
            Terms::Wide(v) => *v = step.apply(v)?,
        }
        Ok(())
    }

    /// Coefficient of the monomial `e`; 0 when absent or beyond the caps.
    pub fn coefficient(&self, e: &ExponentVector) -> Result<i64> {
        if e.len() != self.num_vars() {
            return Err(Error::LengthMismatch {
                what: "exponent vector",
                expected: self.num_vars(),
                found: e.len(),
            });
        }
        if !e.within(&self.caps) {
            return Ok(0);
        }
        let key = pack(&self.layout, e.as_slice());
        Ok(match &self.terms {
            Terms::Narrow(v) => lookup(v, key as u64),
            Terms::Wide(v) => lookup(v, key),
        })
    }

    /// All nonzero monomials in lexicographic order of exponent vectors.
    pub fn surviving_monomials(&self) -> Vec<(ExponentVector, i64)> {
        self.iter().collect()
    }

    /// Lexicographically smallest monomial, if any.
    pub fn first_monomial(&self) -> Option<(ExponentVector, i64)> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ExponentVector, i64)> + '_ {
        let layout = self.layout;
        let keys: Box<dyn Iterator<Item = (u128, i64)> + '_> = match &self.terms {
            Terms::Narrow(v) => Box::new(v.iter().map(|&(k, c)| (k as u128, c))),
            Terms::Wide(v) => Box::new(v.iter().copied()),
        };
        keys.map(move |(k, c)| (ExponentVector(unpack(&layout, k)), c))
    }

    /// One line per monomial: `<coeff> <e1> ... <en>`, lexicographically sorted.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (e, c) in self.iter() {
            s.push_str(&c.to_string());
            for x in e.as_slice() {
                s.push(' ');
                s.push_str(&x.to_string());
            }
            s.push('\n');
        }
        s
    }

    /// Keeps only monomials allowed by the tighter `caps`.
    pub fn restrict(&self, caps: &CapVector) -> Result<Self> {
        if caps.len() != self.num_vars() {
            return Err(Error::LengthMismatch {
                what: "caps",
                expected: self.num_vars(),
                found: caps.len(),
            });
        }
        Self::from_terms(self.num_vars(), caps.clone(), self.iter())
    }
}

impl fmt::Display for CappedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            write!(f, "{}*x^{}", c.unsigned_abs(), e)?;
        }
        Ok(())
    }
}

fn pack(layout: &Layout, exps: &[u8]) -> u128 {
    exps.iter()
        .enumerate()
        .fold(0u128, |k, (i, &e)| k | ((e as u128) << layout.shift(i)))
}

fn unpack(layout: &Layout, key: u128) -> Vec<u8> {
    (0..layout.num_vars)
        .map(|i| ((key >> layout.shift(i)) & layout.mask()) as u8)
        .collect()
}

fn lookup<K: Key>(terms: &[(K, i64)], key: K) -> i64 {
    terms
        .binary_search_by_key(&key, |&(k, _)| k)
        .map(|i| terms[i].1)
        .unwrap_or(0)
}

/// One capped multiplication by `x_a - x_b`.
struct Step {
    shift_a: u32,
    shift_b: u32,
    mask: u128,
    cap_a: u128,
    cap_b: u128,
}

impl Step {
    fn new(layout: &Layout, caps: &CapVector, t: BinomialTerm) -> Self {
        Self {
            shift_a: layout.shift(t.a),
            shift_b: layout.shift(t.b),
            mask: layout.mask(),
            cap_a: caps.as_slice()[t.a] as u128,
            cap_b: caps.as_slice()[t.b] as u128,
        }
    }

    fn apply<K: Key>(&self, src: &[(K, i64)]) -> Result<Vec<(K, i64)>> {
        let da = K::from_u128(1u128 << self.shift_a);
        let db = K::from_u128(1u128 << self.shift_b);
        if src.len() < PARALLEL_THRESHOLD {
            let mut out = Vec::with_capacity(src.len() * 2);
            self.merge(src, src, da, db, &mut out)?;
            return Ok(out);
        }
        // Split the x_a stream at fixed source positions and locate the
        // matching key boundary in the x_b stream, so that every chunk covers
        // a disjoint key range and the concatenation stays sorted.
        let chunk = src.len().div_ceil(PARALLEL_CHUNKS);
        let mut bounds_a: Vec<usize> = (0..src.len()).step_by(chunk).collect();
        bounds_a.push(src.len());
        let bounds_b: Vec<usize> = bounds_a
            .iter()
            .map(|&i| {
                if i == src.len() {
                    src.len()
                } else {
                    // Widths are at most 127 bits, so u128 sums cannot wrap.
                    let pivot = src[i].0.to_u128() + da.to_u128();
                    src.partition_point(|&(k, _)| k.to_u128() + db.to_u128() < pivot)
                }
            })
            .collect();
        // The first chunk must also take every x_b key below the first pivot.
        let ranges: Vec<((usize, usize), (usize, usize))> = (0..bounds_a.len() - 1)
            .map(|c| {
                let lo_b = if c == 0 { 0 } else { bounds_b[c] };
                let hi_b = if c + 2 == bounds_a.len() { src.len() } else { bounds_b[c + 1] };
                ((bounds_a[c], bounds_a[c + 1]), (lo_b, hi_b))
            })
            .collect();
        let parts: Vec<Result<Vec<(K, i64)>>> = ranges
            .into_par_iter()
            .map(|((a0, a1), (b0, b1))| {
                let mut out = Vec::with_capacity((a1 - a0) + (b1 - b0));
                self.merge(&src[a0..a1], &src[b0..b1], da, db, &mut out)?;
                Ok(out)
            })
            .collect();
        let mut out = Vec::with_capacity(src.len() * 2);
        for p in parts {
            out.extend(p?);
        }
        Ok(out)
    }

    fn merge<K: Key>(
        &self,
        a_src: &[(K, i64)],
        b_src: &[(K, i64)],
        da: K,
        db: K,
        out: &mut Vec<(K, i64)>,
    ) -> Result<()> {
        let (shift_a, shift_b, mask) = (self.shift_a, self.shift_b, self.mask);
        let (cap_a, cap_b) = (self.cap_a, self.cap_b);
        let mut a_iter = a_src
            .iter()
            .filter(move |&&(k, _)| (k.to_u128() >> shift_a) & mask < cap_a)
            .map(move |&(k, c)| (k.wrapping_add(da), c));
        let mut b_iter = b_src
            .iter()
            .filter(move |&&(k, _)| (k.to_u128() >> shift_b) & mask < cap_b)
            .map(move |&(k, c)| Ok((k.wrapping_add(db), c.checked_neg().ok_or(Error::Overflow)?)));
        let mut next_a = a_iter.next();
        let mut next_b = b_iter.next().transpose()?;
        loop {
            match (next_a, next_b) {
                (Some((ka, ca)), Some((kb, cb))) => {
                    if ka < kb {
                        out.push((ka, ca));
                        next_a = a_iter.next();
                    } else if kb < ka {
                        out.push((kb, cb));
                        next_b = b_iter.next().transpose()?;
                    } else {
                        let c = ca.checked_add(cb).ok_or(Error::Overflow)?;
                        if c != 0 {
                            out.push((ka, c));
                        }
                        next_a = a_iter.next();
                        next_b = b_iter.next().transpose()?;
                    }
                }
                (Some(x), None) => {
                    out.push(x);
                    out.extend(a_iter);
                    return Ok(());
                }
                (None, Some(x)) => {
                    out.push(x);
                    for y in b_iter {
                        out.push(y?);
                    }
                    return Ok(());
                }
                (None, None) => return Ok(()),
            }
        }
    }
}

/// Fully expands a product of binomials with no pruning. Reference oracle
/// for the capped pipeline; every variable is capped at the number of terms.
pub fn naive_expand(terms: &[BinomialTerm], num_vars: usize) -> Result<CappedPolynomial> {
    const TERM_LIMIT: usize = 22;
    if terms.len() > TERM_LIMIT {
        return Err(Error::TermLimit { limit: TERM_LIMIT, found: terms.len() });
    }
    let cap = terms.len() as u8;
    let caps = CapVector::uniform(num_vars, cap)?;
    // Dense recursive expansion over exponent vectors, independent of the
    // packed merge used by `multiply_binomial`.
    let mut acc: std::collections::BTreeMap<Vec<u8>, i64> = std::collections::BTreeMap::new();
    acc.insert(vec![0; num_vars], 1);
    for t in terms {
        t.check(num_vars)?;
        let mut next: std::collections::BTreeMap<Vec<u8>, i64> = std::collections::BTreeMap::new();
        for (e, &c) in &acc {
            let mut ea = e.clone();
            ea[t.a] += 1;
            let slot = next.entry(ea).or_insert(0);
            *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
            let mut eb = e.clone();
            eb[t.b] += 1;
            let slot = next.entry(eb).or_insert(0);
            *slot = slot.checked_sub(c).ok_or(Error::Overflow)?;
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    CappedPolynomial::from_terms(
        num_vars,
        caps,
        acc.into_iter().map(|(e, c)| (ExponentVector(e), c)),
    )
}
