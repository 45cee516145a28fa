//! Sparse exterior algebra over `F^n` for small `n`.
//!
//! Multivectors are maps from multi-indices (stored as bitmasks) to
//! coefficients on the canonical orthonormal basis `e_i = e_{i1} ^ ... ^ e_{ip}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{dim_err, domain_err, Result};
use crate::numerics::{FieldTag, Matrix, C64, ONE, ZERO};

/// Largest supported ambient dimension.
pub const MAX_AMBIENT: usize = 20;

/// Coefficients smaller than this in modulus are dropped after every operation.
pub const PRUNE_TOL: f64 = 1e-14;

/// A strictly increasing list of indices in `1..=MAX_AMBIENT`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u32);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    /// Builds an index from 1-based entries, which must be strictly increasing.
    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        let mut last = 0;
        for &i in indices {
            if i == 0 || i > MAX_AMBIENT {
                return Err(domain_err(format!("index {i} outside 1..={MAX_AMBIENT}")));
            }
            if i <= last {
                return Err(domain_err(
                    "multi-index entries must be strictly increasing",
                ));
            }
            last = i;
            bits |= 1 << (i - 1);
        }
        Ok(MultiIndex(bits))
    }

    pub fn from_bits(bits: u32) -> Self {
        MultiIndex(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The index `(1, ..., n)`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_AMBIENT);
        if n == 32 {
            MultiIndex(u32::MAX)
        } else {
            MultiIndex((1u32 << n) - 1)
        }
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based entries in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..32)
            .filter(|b| self.0 >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }

    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn is_subset_of(self, other: MultiIndex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 | other.0)
    }

    pub fn intersection(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 & other.0)
    }

    pub fn difference(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 & !other.0)
    }

    /// Complement in `(1, ..., n)`.
    pub fn complement(self, n: usize) -> MultiIndex {
        MultiIndex(Self::full(n).0 & !self.0)
    }

    /// All indices of grade `p` with entries in `1..=n`, in lexicographic order.
    pub fn all_of_grade(n: usize, p: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        if p > n {
            return out;
        }
        let mut current: Vec<usize> = (1..=p).collect();
        loop {
            out.push(MultiIndex::new(&current).expect("valid combination"));
            let mut k = p;
            while k > 0 && current[k - 1] == n - p + k {
                k -= 1;
            }
            if k == 0 {
                return out;
            }
            current[k - 1] += 1;
            for t in k..p {
                current[t] = current[t - 1] + 1;
            }
        }
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiIndex{:?}", self.indices())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.indices();
        if idx.iter().all(|&i| i < 10) {
            for i in idx {
                write!(f, "{i}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = idx.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

/// Sign of the permutation that sorts `i` followed by `j`; 0 if they overlap.
pub fn perm_sign(i: MultiIndex, j: MultiIndex) -> i8 {
    if i.0 & j.0 != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    let mut rest = j.0;
    while rest != 0 {
        let b = rest.trailing_zeros();
        inversions += (i.0 >> b).count_ones();
        rest &= rest - 1;
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The unit top blade `e_{1...n}` fixing the orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct Orientation {
    top: Multivector,
}

impl Orientation {
    pub fn canonical(n: usize, field: FieldTag) -> Result<Self> {
        Ok(Orientation {
            top: Multivector::basis_blade(n, field, MultiIndex::full(n))?,
        })
    }

    pub fn top_blade(&self) -> &Multivector {
        &self.top
    }

    pub fn ambient_dim(&self) -> usize {
        self.top.n
    }
}

/// Sparse multivector with coefficients on the canonical basis blades.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    n: usize,
    field: FieldTag,
    terms: BTreeMap<MultiIndex, C64>,
}

impl Multivector {
    pub fn zero(n: usize, field: FieldTag) -> Result<Self> {
        if n > MAX_AMBIENT {
            return Err(domain_err(format!(
                "exterior algebra supports ambient dimension up to {MAX_AMBIENT}, got {n}"
            )));
        }
        Ok(Multivector {
            n,
            field,
            terms: BTreeMap::new(),
        })
    }

    pub fn scalar(n: usize, field: FieldTag, c: C64) -> Result<Self> {
        Self::from_terms(n, field, [(MultiIndex::EMPTY, c)])
    }

    pub fn basis_blade(n: usize, field: FieldTag, idx: MultiIndex) -> Result<Self> {
        Self::from_terms(n, field, [(idx, ONE)])
    }

    /// Grade-1 multivector with the given coordinates.
    pub fn vector(field: FieldTag, coords: &[C64]) -> Result<Self> {
        let n = coords.len();
        Self::from_terms(
            n,
            field,
            coords
                .iter()
                .enumerate()
                .map(|(k, &c)| (MultiIndex(1 << k), c)),
        )
    }

    pub fn from_terms(
        n: usize,
        field: FieldTag,
        terms: impl IntoIterator<Item = (MultiIndex, C64)>,
    ) -> Result<Self> {
        let mut mv = Self::zero(n, field)?;
        for (idx, c) in terms {
            if idx.max_index() > n {
                return Err(dim_err(format!(
                    "index {idx:?} exceeds ambient dimension {n}"
                )));
            }
            let c = if field == FieldTag::Real {
                C64::new(c.re, 0.0)
            } else {
                c
            };
            *mv.terms.entry(idx).or_insert(ZERO) += c;
        }
        mv.prune();
        Ok(mv)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, C64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn coefficient(&self, idx: MultiIndex) -> C64 {
        self.terms.get(&idx).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The grade if all terms share one, `None` for zero or mixed multivectors.
    pub fn grade(&self) -> Option<usize> {
        let mut grades = self.terms.keys().map(|k| k.grade());
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    pub fn grade_part(&self, p: usize) -> Multivector {
        Multivector {
            n: self.n,
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.grade() == p)
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, s: C64) -> Multivector {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out.prune();
        out
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&k, &v) in &other.terms {
            *out.terms.entry(k).or_insert(ZERO) += v;
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector> {
        self.add(&other.scale(-ONE))
    }

    fn check_compatible(&self, other: &Multivector) -> Result<()> {
        if self.n != other.n {
            return Err(dim_err(format!(
                "multivectors over F^{} and F^{}",
                self.n, other.n
            )));
        }
        if self.field != other.field {
            return Err(dim_err(format!(
                "multivectors over {} and {} fields",
                self.field, other.field
            )));
        }
        Ok(())
    }

    fn empty_like(&self) -> Multivector {
        Multivector {
            n: self.n,
            field: self.field,
            terms: BTreeMap::new(),
        }
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
    }

    fn accumulate(&mut self, idx: MultiIndex, c: C64) {
        *self.terms.entry(idx).or_insert(ZERO) += c;
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({c})")?;
            }
            if idx.grade() > 0 {
                write!(f, " e{idx}")?;
            }
        }
        Ok(())
    }
}

/// Exterior product, bilinear.
pub fn wedge(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.check_compatible(b)?;
    let mut out = a.empty_like();
    for (&i, &ca) in &a.terms {
        for (&j, &cb) in &b.terms {
            let s = perm_sign(i, j);
            if s != 0 {
                out.accumulate(i.union(j), ca * cb * f64::from(s));
            }
        }
    }
    out.prune();
    Ok(out)
}

/// Inner product induced by the orthonormal basis blades, conjugate-linear in `a`.
pub fn mv_inner(a: &Multivector, b: &Multivector) -> Result<C64> {
    a.check_compatible(b)?;
    Ok(a.terms
        .iter()
        .filter_map(|(k, &ca)| b.terms.get(k).map(|&cb| a.field.conj(ca) * cb))
        .sum())
}

/// Left contraction `a ⌟ b`, the adjoint of `c -> a ^ c`.
pub fn contraction(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.check_compatible(b)?;
    let mut out = a.empty_like();
    for (&i, &ca) in &a.terms {
        let ca = a.field.conj(ca);
        for (&j, &cb) in &b.terms {
            if i.is_subset_of(j) {
                let rest = j.difference(i);
                out.accumulate(rest, ca * cb * f64::from(perm_sign(i, rest)));
            }
        }
    }
    out.prune();
    Ok(out)
}

/// Hodge star `a ⌟ Ω`.
pub fn star(a: &Multivector, orientation: &Orientation) -> Result<Multivector> {
    if a.n != orientation.ambient_dim() {
        return Err(dim_err(
            "orientation and multivector have different ambient spaces",
        ));
    }
    let top = if a.field == orientation.top.field {
        orientation.top.clone()
    } else {
        Orientation::canonical(a.n, a.field)?.top
    };
    contraction(a, &top)
}

/// Regressive product, bilinear, with `(a v b)* = a* ^ b*`.
pub fn regressive(
    a: &Multivector,
    b: &Multivector,
    orientation: &Orientation,
) -> Result<Multivector> {
    a.check_compatible(b)?;
    let n = a.n;
    if n != orientation.ambient_dim() {
        return Err(dim_err(
            "orientation and multivector have different ambient spaces",
        ));
    }
    let full = MultiIndex::full(n);
    let mut out = a.empty_like();
    for (&i, &ca) in &a.terms {
        for (&j, &cb) in &b.terms {
            if i.union(j) == full {
                let s = perm_sign(j.complement(n), i.complement(n));
                out.accumulate(i.intersection(j), ca * cb * f64::from(s));
            }
        }
    }
    out.prune();
    Ok(out)
}

/// Wedge of the columns in order; zero iff they are linearly dependent.
pub fn blade_from_basis(columns: &Matrix, field: FieldTag) -> Result<Multivector> {
    let n = columns.rows();
    let mut blade = Multivector::scalar(n, field, ONE)?;
    for j in 0..columns.cols() {
        blade = wedge(&blade, &Multivector::vector(field, &columns.column(j))?)?;
    }
    Ok(blade)
}
