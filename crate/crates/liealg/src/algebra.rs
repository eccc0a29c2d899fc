//! Lie algebras given by structure constants on a named basis.

use crate::error::{Error, Result};
use crate::scalar::{Field, Laurent};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// `Σ_k c_k X_k` over generator indices, zero coefficients dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<R: Field>(BTreeMap<usize, Laurent<R>>);

impl<R: Field> Default for LinComb<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Field> LinComb<R> {
    pub fn zero() -> Self {
        Self(BTreeMap::new())
    }

    pub fn generator(k: usize) -> Self {
        Self::term(k, Laurent::one())
    }

    pub fn term(k: usize, c: Laurent<R>) -> Self {
        let mut out = Self::zero();
        out.add_term(k, &c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Laurent<R> {
        self.0.get(&k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Laurent<R>)> {
        self.0.iter().map(|(&k, c)| (k, c))
    }

    pub fn add_term(&mut self, k: usize, c: &Laurent<R>) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&k);
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Laurent<R>) {
        for (&k, x) in &other.0 {
            self.add_term(k, &(x * c));
        }
    }

    pub fn scaled(&self, c: &Laurent<R>) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-&Laurent::one())
    }

    /// Rewrites each coefficient, dropping those that become zero.
    pub fn map_coeffs(&self, mut f: impl FnMut(usize, &Laurent<R>) -> Laurent<R>) -> Self {
        let mut out = Self::zero();
        for (&k, c) in &self.0 {
            out.add_term(k, &f(k, c));
        }
        out
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.0
            .iter()
            .map(|(&k, c)| {
                if *c == Laurent::one() {
                    names[k].clone()
                } else if *c == -&Laurent::one() {
                    format!("-{}", names[k])
                } else if c.terms().count() == 1 {
                    format!("{c} {}", names[k])
                } else {
                    format!("({c}) {}", names[k])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// One bracket `[a, b] = Σ c X` in terms of generator names.
#[derive(Clone, Debug)]
pub struct BracketSpec<R: Field> {
    pub a: String,
    pub b: String,
    pub value: Vec<(String, Laurent<R>)>,
}

impl<R: Field> BracketSpec<R> {
    pub fn new(a: &str, b: &str, value: Vec<(&str, Laurent<R>)>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            value: value.into_iter().map(|(g, c)| (g.to_string(), c)).collect(),
        }
    }
}

/// A Lie algebra over Laurent-polynomial scalars. Brackets of unlisted pairs
/// vanish; antisymmetry is built in and Jacobi is checked exactly whenever a
/// value is constructed.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<R: Field> {
    names: Vec<String>,
    // Full antisymmetric n x n table, row-major.
    table: Vec<LinComb<R>>,
}

fn index_of(names: &[String]) -> Result<HashMap<&str, usize>> {
    let mut idx = HashMap::new();
    for (k, n) in names.iter().enumerate() {
        if idx.insert(n.as_str(), k).is_some() {
            return Err(Error::DuplicateGenerator(n.clone()));
        }
    }
    Ok(idx)
}

impl<R: Field> LieAlgebra<R> {
    /// Builds and validates an algebra. A pair may be given in either order;
    /// giving both orders is allowed when they agree.
    pub fn from_brackets(names: &[&str], brackets: Vec<BracketSpec<R>>) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let n = names.len();
        let mut table = vec![LinComb::zero(); n * n];
        let mut given = vec![false; n * n];
        {
            let idx = index_of(&names)?;
            let lookup = |s: &str| idx.get(s).copied().ok_or_else(|| Error::UnknownGenerator(s.to_string()));
            for br in brackets {
                let (a, b) = (lookup(&br.a)?, lookup(&br.b)?);
                let mut value = LinComb::zero();
                for (g, c) in &br.value {
                    value.add_term(lookup(g)?, c);
                }
                if a == b {
                    if !value.is_zero() {
                        return Err(Error::SelfBracket(br.a));
                    }
                    continue;
                }
                if given[a * n + b] {
                    if table[a * n + b] != value {
                        return Err(Error::InconsistentBracket { a: br.a, b: br.b });
                    }
                    continue;
                }
                given[a * n + b] = true;
                given[b * n + a] = true;
                table[b * n + a] = value.neg();
                table[a * n + b] = value;
            }
        }
        Self::from_table(names, table)
    }

    pub(crate) fn from_table(names: Vec<String>, table: Vec<LinComb<R>>) -> Result<Self> {
        index_of(&names)?;
        let alg = Self { names, table };
        alg.check_jacobi()?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn bracket(&self, a: usize, b: usize) -> &LinComb<R> {
        &self.table[a * self.dim() + b]
    }

    /// `[X_a, X_b]` by name.
    pub fn bracket_of(&self, a: &str, b: &str) -> Result<&LinComb<R>> {
        Ok(self.bracket(self.index(a)?, self.index(b)?))
    }

    /// Bilinear extension of the bracket.
    pub fn bracket_comb(&self, x: &LinComb<R>, y: &LinComb<R>) -> LinComb<R> {
        let mut out = LinComb::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(self.bracket(a, b), &(ca * cb));
            }
        }
        out
    }

    /// `[[a,b],c] + [[b,c],a] + [[c,a],b]`.
    pub fn jacobi_residual(&self, a: usize, b: usize, c: usize) -> LinComb<R> {
        let g = LinComb::generator;
        let mut out = self.bracket_comb(self.bracket(a, b), &g(c));
        out.add_scaled(&self.bracket_comb(self.bracket(b, c), &g(a)), &Laurent::one());
        out.add_scaled(&self.bracket_comb(self.bracket(c, a), &g(b)), &Laurent::one());
        out
    }

    /// First failing triple `a < b < c` in lexicographic order.
    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        let bad = (0..n).into_par_iter().find_map_first(|a| {
            for b in a + 1..n {
                for c in b + 1..n {
                    let r = self.jacobi_residual(a, b, c);
                    if !r.is_zero() {
                        return Some((a, b, c, r));
                    }
                }
            }
            None
        });
        match bad {
            None => Ok(()),
            Some((a, b, c, r)) => Err(Error::JacobiViolation {
                a: self.names[a].clone(),
                b: self.names[b].clone(),
                c: self.names[c].clone(),
                residual: r.format(&self.names),
            }),
        }
    }

    /// Nonzero brackets `[X_a, X_b]` with `a < b`.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &LinComb<R>)> {
        let n = self.dim();
        (0..n)
            .flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
            .map(|(a, b)| (a, b, self.bracket(a, b)))
            .filter(|(_, _, v)| !v.is_zero())
    }

    pub fn format_bracket(&self, a: usize, b: usize) -> String {
        format!(
            "[{},{}] = {}",
            self.names[a],
            self.names[b],
            self.bracket(a, b).format(&self.names)
        )
    }

    /// No structure constant involves `ε`.
    pub fn is_epsilon_free(&self) -> bool {
        self.table.iter().all(|v| v.iter().all(|(_, c)| c.is_constant()))
    }

    /// Appends a central generator.
    pub fn extend_trivially(&self, name: &str) -> Result<Self> {
        if self.names.iter().any(|n| n == name) {
            return Err(Error::NameClash(name.to_string()));
        }
        let n = self.dim();
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut table = vec![LinComb::zero(); (n + 1) * (n + 1)];
        for a in 0..n {
            for b in 0..n {
                table[a * (n + 1) + b] = self.bracket(a, b).clone();
            }
        }
        Self::from_table(names, table)
    }

    /// New basis `Y_i = Σ_j A_ij X_j` described by `map`.
    pub fn change_basis(&self, map: &BasisMap<R>) -> Result<Self> {
        map.check_source(self)?;
        let inv = map.inverse()?;
        let n = self.dim();
        let to_new = |x: &LinComb<R>| {
            let mut out = LinComb::zero();
            for (m, c) in x.iter() {
                out.add_scaled(&inv[m], c);
            }
            out
        };
        let mut table = vec![LinComb::zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = to_new(&self.bracket_comb(&map.rows[i].1, &map.rows[j].1));
                table[j * n + i] = v.neg();
                table[i * n + j] = v;
            }
        }
        Self::from_table(map.rows.iter().map(|r| r.0.clone()).collect(), table)
    }

    /// Primed generators `X' = ε^k X`; `[X'_a, X'_b] = Σ c ε^{k_a + k_b - k_c} X'_c`.
    pub fn rescale(&self, schedule: &[(&str, i32)]) -> Result<Self> {
        let k = self.schedule_powers(schedule)?;
        let n = self.dim();
        let mut table = vec![LinComb::zero(); n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self
                    .bracket(a, b)
                    .map_coeffs(|c, x| x.shift(k[a] + k[b] - k[c]));
            }
        }
        Self::from_table(self.names.iter().map(|s| format!("{s}'")).collect(), table)
    }

    /// Powers `k_X` of a complete schedule, in generator order.
    pub fn schedule_powers(&self, schedule: &[(&str, i32)]) -> Result<Vec<i32>> {
        let mut k = vec![None; self.dim()];
        for &(name, p) in schedule {
            k[self.index(name)?] = Some(p);
        }
        k.iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| Error::IncompleteSchedule(self.names[i].clone())))
            .collect()
    }

    /// Sets `ε = 0` in every structure constant.
    pub fn contract(&self) -> Result<Self> {
        let n = self.dim();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = self.bracket(a, b);
                let mut out = LinComb::zero();
                for (c, x) in v.iter() {
                    let at0 = x.at_zero().ok_or_else(|| Error::NegativePower {
                        a: self.names[a].clone(),
                        b: self.names[b].clone(),
                    })?;
                    out.add_term(c, &Laurent::constant(at0));
                }
                table.push(out);
            }
        }
        Self::from_table(self.names.clone(), table)
    }
}

/// Exact equality of structure constants after renaming `a`'s generators to
/// `b`'s through `mapping`.
pub fn same_structure<R: Field>(a: &LieAlgebra<R>, b: &LieAlgebra<R>, mapping: &[(&str, &str)]) -> Result<bool> {
    if a.dim() != b.dim() || mapping.len() != a.dim() {
        return Err(Error::NotBijective(format!(
            "{} pairs for algebras of dimension {} and {}",
            mapping.len(),
            a.dim(),
            b.dim()
        )));
    }
    let mut perm = vec![usize::MAX; a.dim()];
    let mut hit = vec![false; b.dim()];
    for &(x, y) in mapping {
        let (i, j) = (a.index(x)?, b.index(y)?);
        if perm[i] != usize::MAX || hit[j] {
            return Err(Error::NotBijective(format!("`{x}` -> `{y}` repeats a generator")));
        }
        perm[i] = j;
        hit[j] = true;
    }
    for i in 0..a.dim() {
        for j in i + 1..a.dim() {
            let mapped = a.bracket(i, j).iter().fold(LinComb::zero(), |mut acc, (k, c)| {
                acc.add_term(perm[k], c);
                acc
            });
            if &mapped != b.bracket(perm[i], perm[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rows `(name_i, Σ_j A_ij X_j)` defining a new basis.
#[derive(Clone, Debug)]
pub struct BasisMap<R: Field> {
    source: Vec<String>,
    rows: Vec<(String, LinComb<R>)>,
}

impl<R: Field> BasisMap<R> {
    pub fn identity(alg: &LieAlgebra<R>) -> Self {
        Self {
            source: alg.names.clone(),
            rows: (0..alg.dim())
                .map(|k| (alg.names[k].clone(), LinComb::generator(k)))
                .collect(),
        }
    }

    /// Replaces generator `old` by `new_name = Σ c X` in place.
    pub fn replace(mut self, old: &str, new_name: &str, value: Vec<(&str, Laurent<R>)>) -> Result<Self> {
        let pos = self
            .source
            .iter()
            .position(|n| n == old)
            .ok_or_else(|| Error::UnknownGenerator(old.to_string()))?;
        let mut comb = LinComb::zero();
        for (g, c) in value {
            let k = self
                .source
                .iter()
                .position(|n| n == g)
                .ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
            comb.add_term(k, &c);
        }
        self.rows[pos] = (new_name.to_string(), comb);
        Ok(self)
    }

    pub fn new_names(&self) -> Vec<String> {
        self.rows.iter().map(|r| r.0.clone()).collect()
    }

    fn check_source(&self, alg: &LieAlgebra<R>) -> Result<()> {
        if self.source != alg.names {
            return Err(Error::SingularMap("map was built for a different algebra".into()));
        }
        Ok(())
    }

    /// Old generators in terms of new ones, `X_m = Σ_n B_mn Y_n`, by
    /// Gauss-Jordan elimination with monomial pivots.
    pub fn inverse(&self) -> Result<Vec<LinComb<R>>> {
        let n = self.rows.len();
        let mut a: Vec<Vec<Laurent<R>>> = self
            .rows
            .iter()
            .map(|(_, r)| (0..n).map(|j| r.coeff(j)).collect())
            .collect();
        let mut b: Vec<Vec<Laurent<R>>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Laurent::one() } else { Laurent::zero() }).collect())
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r][col].is_unit()).ok_or_else(|| {
                let reason = if (col..n).all(|r| a[r][col].is_zero()) {
                    "matrix is singular"
                } else {
                    "inverse needs division by a non-monomial"
                };
                Error::SingularMap(format!("column `{}`: {reason}", self.source[col]))
            })?;
            a.swap(col, piv);
            b.swap(col, piv);
            let inv = a[col][col].inverse().unwrap();
            for j in 0..n {
                a[col][j] = &a[col][j] * &inv;
                b[col][j] = &b[col][j] * &inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                    b[r][j] = &b[r][j] - &(&f * &b[col][j]);
                }
            }
        }
        // Row m of A^{-1} gives X_m in terms of the Y_n.
        Ok(b
            .into_iter()
            .map(|row| {
                let mut comb = LinComb::zero();
                for (j, c) in row.iter().enumerate() {
                    comb.add_term(j, c);
                }
                comb
            })
            .collect())
    }
}

impl<R: Field> fmt::Display for LieAlgebra<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.names.join(", "))?;
        for (a, b, _) in self.nonzero_brackets() {
            writeln!(f, "{}", self.format_bracket(a, b))?;
        }
        Ok(())
    }
}
