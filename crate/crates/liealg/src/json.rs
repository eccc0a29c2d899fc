//! `{generators, brackets: {"a,b": [{gen, re_num, re_den, im_num, im_den, eps_pow}]}}`
//! for exact algebras. Integers are JSON numbers when they fit in `i64` and
//! decimal strings otherwise; both are accepted on input.

use crate::algebra::{BracketSpec, LieAlgebra};
use crate::error::{Error, Result};
use crate::scalar::Laurent;
use crate::{GaussianRational, Rational};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from_big(n: &BigInt) -> Self {
        n.to_i64().map_or_else(|| Self::Big(n.to_string()), Self::Small)
    }

    fn to_big(&self) -> Result<BigInt> {
        match self {
            Self::Small(n) => Ok(BigInt::from(*n)),
            Self::Big(s) => s
                .parse()
                .map_err(|_| Error::Json(format!("`{s}` is not an integer"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub gen: String,
    pub re_num: JsonInt,
    pub re_den: JsonInt,
    pub im_num: JsonInt,
    pub im_den: JsonInt,
    pub eps_pow: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub generators: Vec<String>,
    pub brackets: BTreeMap<String, Vec<TermJson>>,
}

fn ratio(num: &JsonInt, den: &JsonInt) -> Result<Rational> {
    let den = den.to_big()?;
    if den.is_zero() {
        return Err(Error::Json("zero denominator".into()));
    }
    Ok(Rational::new(num.to_big()?, den))
}

impl AlgebraJson {
    pub fn from_algebra(alg: &LieAlgebra<Rational>) -> Self {
        let mut brackets = BTreeMap::new();
        for (a, b, v) in alg.nonzero_brackets() {
            let mut terms = Vec::new();
            for (g, c) in v.iter() {
                for (pow, z) in c.terms() {
                    terms.push(TermJson {
                        gen: alg.name(g).to_string(),
                        re_num: JsonInt::from_big(z.re.numer()),
                        re_den: JsonInt::from_big(z.re.denom()),
                        im_num: JsonInt::from_big(z.im.numer()),
                        im_den: JsonInt::from_big(z.im.denom()),
                        eps_pow: pow,
                    });
                }
            }
            brackets.insert(format!("{},{}", alg.name(a), alg.name(b)), terms);
        }
        Self {
            generators: alg.names().to_vec(),
            brackets,
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra<Rational>> {
        let mut specs = Vec::new();
        for (key, terms) in &self.brackets {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| Error::Json(format!("bracket key `{key}` is not `a,b`")))?;
            let mut value = Vec::new();
            for t in terms {
                let z = GaussianRational::new(ratio(&t.re_num, &t.re_den)?, ratio(&t.im_num, &t.im_den)?);
                value.push((t.gen.clone(), Laurent::monomial(z, t.eps_pow)));
            }
            specs.push(BracketSpec {
                a: a.trim().to_string(),
                b: b.trim().to_string(),
                value,
            });
        }
        let names: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        LieAlgebra::from_brackets(&names, specs)
    }
}

pub fn to_json(alg: &LieAlgebra<Rational>) -> String {
    serde_json::to_string_pretty(&AlgebraJson::from_algebra(alg)).expect("algebra JSON serializes")
}

pub fn from_json(text: &str) -> Result<LieAlgebra<Rational>> {
    let parsed: AlgebraJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    parsed.to_algebra()
}
