//! Standard algebras and the Poincaré → Galilei contraction data.
//!
//! Poincaré conventions (`ħ = c = 1`, generators `H, P1..P3, J1..J3, K1..K3`
//! in that order):
//!
//! ```text
//! [J_i, J_j] = i ε_ijk J_k     [J_i, P_j] = i ε_ijk P_k     [J_i, K_j] = i ε_ijk K_k
//! [K_i, K_j] = -i ε_ijk J_k    [P_i, K_j] = -i δ_ij H       [K_i, H]   = i P_i
//! [P_i, P_j] = [P_i, H] = [J_i, H] = 0
//! ```
//!
//! The extended Galilei algebra uses the same rotation brackets with
//! `[P_i, K_j] = -i δ_ij M`, `[K_i, K_j] = 0`, `[K_i, H] = i P_i` and `M`
//! central, which is exactly what the contraction produces.

use crate::algebra::{BasisMap, BracketSpec, LieAlgebra};
use crate::error::Result;
use crate::poly::NcPoly;
use crate::scalar::{Field, Laurent};

const AXES: [&str; 3] = ["1", "2", "3"];

/// `ε_ijk` for the cyclic triples, `(i, j, k)` zero-based.
const CYCLIC: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

fn vec3(base: &str) -> [String; 3] {
    AXES.map(|a| format!("{base}{a}"))
}

fn i_times<R: Field>(sign: i64) -> Laurent<R> {
    Laurent::int(0, sign)
}

fn owned<R: Field>(a: &str, b: &str, value: Vec<(String, Laurent<R>)>) -> BracketSpec<R> {
    BracketSpec {
        a: a.into(),
        b: b.into(),
        value,
    }
}

/// `[A_i, B_j] = sign · i ε_ijk C_k`.
fn cross<R: Field>(a: &str, b: &str, c: &str, sign: i64) -> Vec<BracketSpec<R>> {
    let (a, b, c) = (vec3(a), vec3(b), vec3(c));
    let mut out = Vec::new();
    for (i, j, k) in CYCLIC {
        out.push(owned(&a[i], &b[j], vec![(c[k].clone(), i_times(sign))]));
        if a != b {
            out.push(owned(&a[j], &b[i], vec![(c[k].clone(), i_times(-sign))]));
        }
    }
    out
}

fn names_of(groups: &[&str]) -> Vec<String> {
    groups
        .iter()
        .flat_map(|g| if g.len() == 1 && "PJK".contains(*g) { vec3(g).to_vec() } else { vec![g.to_string()] })
        .collect()
}

fn build<R: Field>(names: &[String], brackets: Vec<BracketSpec<R>>) -> LieAlgebra<R> {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    LieAlgebra::from_brackets(&refs, brackets).expect("builtin algebra satisfies Jacobi")
}

/// `n`-dimensional abelian algebra on `X1..Xn`.
pub fn abelian<R: Field>(n: usize) -> LieAlgebra<R> {
    let names: Vec<String> = (1..=n).map(|k| format!("X{k}")).collect();
    build(&names, Vec::new())
}

/// `[J_i, J_j] = i ε_ijk J_k`.
pub fn su2<R: Field>() -> LieAlgebra<R> {
    build(&names_of(&["J"]), cross("J", "J", "J", 1))
}

fn rotations<R: Field>() -> Vec<BracketSpec<R>> {
    let mut b = cross("J", "J", "J", 1);
    b.extend(cross("J", "P", "P", 1));
    b.extend(cross("J", "K", "K", 1));
    b
}

fn boosts_move_energy<R: Field>(energy: &str) -> Vec<BracketSpec<R>> {
    let (k, p) = (vec3("K"), vec3("P"));
    (0..3)
        .map(|i| owned(&k[i], energy, vec![(p[i].clone(), i_times(1))]))
        .collect()
}

fn momentum_boost<R: Field>(target: &str) -> Vec<BracketSpec<R>> {
    let (p, k) = (vec3("P"), vec3("K"));
    (0..3)
        .map(|i| owned(&p[i], &k[i], vec![(target.to_string(), i_times(-1))]))
        .collect()
}

/// The Poincaré algebra; see the module docs for the conventions.
pub fn poincare<R: Field>() -> LieAlgebra<R> {
    let mut b = rotations();
    b.extend(cross("K", "K", "J", -1));
    b.extend(momentum_boost("H"));
    b.extend(boosts_move_energy("H"));
    build(&names_of(&["H", "P", "J", "K"]), b)
}

/// The centrally extended Galilei algebra on `H, P, J, K, M`.
pub fn extended_galilei<R: Field>() -> LieAlgebra<R> {
    let mut b = rotations();
    b.extend(momentum_boost("M"));
    b.extend(boosts_move_energy("H"));
    build(&names_of(&["H", "P", "J", "K", "M"]), b)
}

/// `ε` powers taking the extended Poincaré algebra (in the `Hbar` basis)
/// to the Galilei one.
pub const GALILEI_SCHEDULE: [(&str, i32); 11] = [
    ("Hbar", 0),
    ("P1", 1),
    ("P2", 1),
    ("P3", 1),
    ("J1", 0),
    ("J2", 0),
    ("J3", 0),
    ("K1", 1),
    ("K2", 1),
    ("K3", 1),
    ("M", 2),
];

/// `Hbar = H - M` on an algebra containing `H` and `M`.
pub fn rest_energy_shift<R: Field>(alg: &LieAlgebra<R>) -> Result<BasisMap<R>> {
    BasisMap::identity(alg).replace("H", "Hbar", vec![("H", Laurent::one()), ("M", -&Laurent::one())])
}

/// Generator-name pairs `X' -> X` from the contracted algebra to
/// [`extended_galilei`].
pub fn primed_to_galilei() -> Vec<(String, String)> {
    names_of(&["H", "P", "J", "K", "M"])
        .into_iter()
        .map(|n| {
            let primed = if n == "H" { "Hbar'".to_string() } else { format!("{n}'") };
            (primed, n)
        })
        .collect()
}

/// `extend_trivially(poincare, M)`, rebased to `Hbar`, rescaled.
pub fn contraction_stages<R: Field>() -> Result<ContractionStages<R>> {
    let source = poincare::<R>();
    let extended = source.extend_trivially("M")?;
    let rebased = extended.change_basis(&rest_energy_shift(&extended)?)?;
    let rescaled = rebased.rescale(&GALILEI_SCHEDULE)?;
    let contracted = rescaled.contract()?;
    Ok(ContractionStages {
        source,
        extended,
        rebased,
        rescaled,
        contracted,
    })
}

#[derive(Clone, Debug)]
pub struct ContractionStages<R: Field> {
    pub source: LieAlgebra<R>,
    pub extended: LieAlgebra<R>,
    pub rebased: LieAlgebra<R>,
    pub rescaled: LieAlgebra<R>,
    pub contracted: LieAlgebra<R>,
}

fn gen<R: Field>(alg: &LieAlgebra<R>, name: &str) -> Result<NcPoly<R>> {
    NcPoly::generator(alg, name)
}

/// `Σ_i A_i B_i` for vector generators named `A1..A3`, `B1..B3` plus `suffix`.
pub fn dot<R: Field>(alg: &LieAlgebra<R>, a: &str, b: &str, suffix: &str) -> Result<NcPoly<R>> {
    let mut out = NcPoly::zero();
    for axis in AXES {
        let x = gen(alg, &format!("{a}{axis}{suffix}"))?;
        let y = gen(alg, &format!("{b}{axis}{suffix}"))?;
        out = &out + &(&x * &y);
    }
    Ok(out)
}

/// `H^2 - P·P`.
pub fn mass_shell<R: Field>(alg: &LieAlgebra<R>, suffix: &str) -> Result<NcPoly<R>> {
    let h = gen(alg, &format!("H{suffix}"))?;
    Ok(&(&h * &h) - &dot(alg, "P", "P", suffix)?)
}

/// `2 M E - P·P` with `E` the energy generator (`H` or `Hbar`).
pub fn internal_energy<R: Field>(alg: &LieAlgebra<R>, energy: &str, suffix: &str) -> Result<NcPoly<R>> {
    let m = gen(alg, &format!("M{suffix}"))?;
    let e = gen(alg, &format!("{energy}{suffix}"))?;
    Ok(&(&m * &e).scale(&Laurent::int(2, 0)) - &dot(alg, "P", "P", suffix)?)
}

/// Components of `K × P`.
fn k_cross_p<R: Field>(alg: &LieAlgebra<R>, suffix: &str) -> Result<[NcPoly<R>; 3]> {
    let k = vec3("K").map(|n| format!("{n}{suffix}"));
    let p = vec3("P").map(|n| format!("{n}{suffix}"));
    let mut out = [NcPoly::zero(), NcPoly::zero(), NcPoly::zero()];
    for (i, j, l) in CYCLIC {
        out[i] = &(&gen(alg, &k[j])? * &gen(alg, &p[l])?) - &(&gen(alg, &k[l])? * &gen(alg, &p[j])?);
    }
    Ok(out)
}

/// `(M J - K × P)·(M J - K × P)`, the spin invariant of the extended
/// Galilei algebra.
pub fn galilei_spin<R: Field>(alg: &LieAlgebra<R>, suffix: &str) -> Result<NcPoly<R>> {
    let m = gen(alg, &format!("M{suffix}"))?;
    let kp = k_cross_p(alg, suffix)?;
    let mut out = NcPoly::zero();
    for (axis, c) in AXES.iter().zip(&kp) {
        let s = &(&m * &gen(alg, &format!("J{axis}{suffix}"))?) - c;
        out = &out + &(&s * &s);
    }
    Ok(out)
}

/// Pauli–Lubanski square `W_0^2 - W·W` with `W_0 = J·P` and
/// `W = H J - K × P`.
pub fn pauli_lubanski<R: Field>(alg: &LieAlgebra<R>) -> Result<NcPoly<R>> {
    let h = gen(alg, "H")?;
    let w0 = dot(alg, "J", "P", "")?;
    let kp = k_cross_p(alg, "")?;
    let mut out = &w0 * &w0;
    for (axis, c) in AXES.iter().zip(&kp) {
        let w = &(&h * &gen(alg, &format!("J{axis}"))?) - c;
        out = &out - &(&w * &w);
    }
    Ok(out)
}
