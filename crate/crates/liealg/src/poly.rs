//! Noncommutative polynomials in the generators (the universal enveloping
//! algebra) and their PBW normal form.

use crate::algebra::{BasisMap, LieAlgebra};
use crate::error::{Error, Result};
use crate::scalar::{Field, Laurent};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Formal sum of words; a word is a sequence of generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcPoly<R: Field> {
    terms: BTreeMap<Vec<usize>, Laurent<R>>,
}

/// Which out-of-order adjacent pair gets rewritten next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteOrder {
    Leftmost,
    Random(u64),
}

impl<R: Field> Default for NcPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Field> NcPoly<R> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Laurent::one())
    }

    pub fn constant(c: Laurent<R>) -> Self {
        Self::word(Vec::new(), c)
    }

    pub fn word(w: Vec<usize>, c: Laurent<R>) -> Self {
        let mut out = Self::zero();
        out.add_term(w, &c);
        out
    }

    pub fn generator(alg: &LieAlgebra<R>, name: &str) -> Result<Self> {
        Ok(Self::word(vec![alg.index(name)?], Laurent::one()))
    }

    /// Product of named generators, e.g. `["J2", "J1"]`.
    pub fn monomial(alg: &LieAlgebra<R>, names: &[&str], c: Laurent<R>) -> Result<Self> {
        let w = names.iter().map(|n| alg.index(n)).collect::<Result<_>>()?;
        Ok(Self::word(w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Laurent<R>)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn coeff(&self, w: &[usize]) -> Laurent<R> {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Vec<usize>, c: &Laurent<R>) {
        if c.is_zero() {
            return;
        }
        push(&mut self.terms, w, c);
    }

    pub fn scale(&self, c: &Laurent<R>) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    /// Words nondecreasing in generator order.
    pub fn is_ordered(&self) -> bool {
        self.terms.keys().all(|w| w.windows(2).all(|p| p[0] <= p[1]))
    }

    fn check_alg(&self, alg: &LieAlgebra<R>) -> Result<()> {
        let dim = alg.dim();
        match self.terms.keys().flatten().find(|&&k| k >= dim) {
            Some(&index) => Err(Error::ForeignWord { index, dim }),
            None => Ok(()),
        }
    }

    /// PBW normal form: rewrite `… X_b X_a …` with `a < b` as
    /// `… X_a X_b … + … [X_b, X_a] …` until every word is ordered.
    pub fn normal_form(&self, alg: &LieAlgebra<R>, order: RewriteOrder) -> Result<Self> {
        self.check_alg(alg)?;
        let mut rng = match order {
            RewriteOrder::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            RewriteOrder::Leftmost => None,
        };
        let mut pending = self.terms.clone();
        let mut done = Self::zero();
        while let Some((w, c)) = pending.pop_first() {
            let inversions: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]).collect();
            if inversions.is_empty() {
                done.add_term(w, &c);
                continue;
            }
            let i = match rng.as_mut() {
                Some(r) => inversions[r.random_range(0..inversions.len())],
                None => inversions[0],
            };
            let (b, a) = (w[i], w[i + 1]);
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            push(&mut pending, swapped, &c);
            for (g, x) in alg.bracket(b, a).iter() {
                let mut shorter = Vec::with_capacity(w.len() - 1);
                shorter.extend_from_slice(&w[..i]);
                shorter.push(g);
                shorter.extend_from_slice(&w[i + 2..]);
                push(&mut pending, shorter, &(&c * x));
            }
        }
        Ok(done)
    }

    /// Normal form with the leftmost rewrite order.
    pub fn normalize(&self, alg: &LieAlgebra<R>) -> Result<Self> {
        self.normal_form(alg, RewriteOrder::Leftmost)
    }

    /// Substitutes every old generator by its expression in the new basis.
    pub fn change_basis(&self, map: &BasisMap<R>) -> Result<Self> {
        let inv = map.inverse()?;
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for &k in w {
                let x = inv.get(k).ok_or(Error::ForeignWord { index: k, dim: inv.len() })?;
                let lin = x.iter().fold(Self::zero(), |mut p, (j, cj)| {
                    p.add_term(vec![j], cj);
                    p
                });
                acc = &acc * &lin;
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|&k| names[k].as_str()).collect::<Vec<_>>().join(" ")
                };
                if *c == Laurent::one() {
                    word
                } else if c.terms().count() == 1 {
                    format!("{c} {word}")
                } else {
                    format!("({c}) {word}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn push<R: Field>(terms: &mut BTreeMap<Vec<usize>, Laurent<R>>, w: Vec<usize>, c: &Laurent<R>) {
    match terms.entry(w) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl<R: Field> Add for &NcPoly<R> {
    type Output = NcPoly<R>;
    fn add(self, rhs: &NcPoly<R>) -> NcPoly<R> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl<R: Field> Neg for &NcPoly<R> {
    type Output = NcPoly<R>;
    fn neg(self) -> NcPoly<R> {
        self.scale(&-&Laurent::one())
    }
}

impl<R: Field> Sub for &NcPoly<R> {
    type Output = NcPoly<R>;
    fn sub(self, rhs: &NcPoly<R>) -> NcPoly<R> {
        self + &(-rhs)
    }
}

impl<R: Field> Mul for &NcPoly<R> {
    type Output = NcPoly<R>;
    fn mul(self, rhs: &NcPoly<R>) -> NcPoly<R> {
        let mut out = NcPoly::zero();
        for (u, x) in &self.terms {
            for (v, y) in &rhs.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(x * y));
            }
        }
        out
    }
}

/// `X p - p X` for a generator `X`.
pub fn commutator_with<R: Field>(x: usize, p: &NcPoly<R>) -> NcPoly<R> {
    let g = NcPoly::word(vec![x], Laurent::one());
    &(&g * p) - &(p * &g)
}

/// `p` commutes with every generator in the enveloping algebra.
pub fn is_casimir<R: Field>(p: &NcPoly<R>, alg: &LieAlgebra<R>) -> Result<bool> {
    for x in 0..alg.dim() {
        if !commutator_with(x, p).normalize(alg)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Writes `p` (over `source`) in the rescaled generators, `X = ε^{-k_X} X'`,
/// and splits the result by power of `ε`. Components come back in ascending
/// power with `ε`-free coefficients, as polynomials over the primed algebra.
pub fn contract_casimir<R: Field>(
    p: &NcPoly<R>,
    source: &LieAlgebra<R>,
    schedule: &[(&str, i32)],
) -> Result<Vec<(i32, NcPoly<R>)>> {
    let k = source.schedule_powers(schedule)?;
    let nf = p.normalize(source)?;
    let mut parts: BTreeMap<i32, NcPoly<R>> = BTreeMap::new();
    for (w, c) in nf.terms() {
        let shift: i32 = -w.iter().map(|&g| k[g]).sum::<i32>();
        for (pow, x) in c.shift(shift).terms() {
            parts
                .entry(pow)
                .or_default()
                .add_term(w.to_vec(), &Laurent::constant(x.clone()));
        }
    }
    Ok(parts.into_iter().filter(|(_, q)| !q.is_zero()).collect())
}
