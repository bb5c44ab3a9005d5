//! Serializable character descriptions used by run configurations.

use lg_padic::EtaleAlgebra;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CharError, Result};
use crate::etale_char::{EtaleChar, U1Char};
use crate::mult::{root_of_unity, MultChar};
use crate::units::{unit_group, Base};

/// A complex value written either as `{re, im}` or as `"root_of_unity: k/m"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueSpec {
    Rect { re: f64, im: f64 },
    Root(String),
}

/// Parses `"root_of_unity: k/m"` into (k, m).
pub fn parse_root(s: &str) -> Result<(i64, u64)> {
    let body = s
        .trim()
        .strip_prefix("root_of_unity:")
        .ok_or_else(|| CharError::BadSpec(format!("expected 'root_of_unity: k/m', got '{s}'")))?;
    let (k, m) = body
        .trim()
        .split_once('/')
        .ok_or_else(|| CharError::BadSpec(format!("missing '/' in '{s}'")))?;
    let k: i64 = k.trim().parse().map_err(|_| CharError::BadSpec(format!("bad numerator in '{s}'")))?;
    let m: u64 = m.trim().parse().map_err(|_| CharError::BadSpec(format!("bad denominator in '{s}'")))?;
    if m == 0 {
        return Err(CharError::BadSpec(format!("zero denominator in '{s}'")));
    }
    Ok((k, m))
}

impl ValueSpec {
    pub fn value(&self) -> Result<Complex64> {
        match self {
            ValueSpec::Rect { re, im } => Ok(Complex64::new(*re, *im)),
            ValueSpec::Root(s) => {
                let (k, m) = parse_root(s)?;
                Ok(root_of_unity(k, m))
            }
        }
    }
}

impl Default for ValueSpec {
    fn default() -> Self {
        ValueSpec::Root("root_of_unity: 0/1".into())
    }
}

/// A multiplicative character of F^× ("F") or of E^× ("E").
///
/// The unit group of O_E is not cyclic, so the character is pinned by one
/// root of unity per basis generator of (O/p^depth)^× (in the order the
/// library computes them). Missing entries are trivial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharSpec {
    pub base: String,
    #[serde(default)]
    pub depth: u32,
    #[serde(default)]
    pub uniformizer_value: ValueSpec,
    #[serde(default)]
    pub generator_values: Vec<String>,
}

impl CharSpec {
    pub fn trivial(base: &str) -> Self {
        Self { base: base.into(), depth: 0, uniformizer_value: ValueSpec::default(), generator_values: vec![] }
    }

    pub fn build(&self, alg: &EtaleAlgebra) -> Result<MultChar> {
        let base = match self.base.as_str() {
            "F" => Base::F(alg.field()),
            "E" => {
                if !alg.is_field() {
                    return Err(CharError::NotAField);
                }
                Base::E(*alg)
            }
            other => return Err(CharError::BadSpec(format!("unknown base '{other}'"))),
        };
        let group = unit_group(&base, self.depth)?;
        if self.generator_values.len() > group.generators().len() {
            return Err(CharError::BadSpec(format!(
                "{} generator values for {} generators",
                self.generator_values.len(),
                group.generators().len()
            )));
        }
        let mut k = vec![0u64; group.generators().len()];
        for (i, s) in self.generator_values.iter().enumerate() {
            let (num, m) = parse_root(s)?;
            let o = group.generator_orders()[i];
            let t = num.rem_euclid(m as i64) as u128 * o as u128;
            if t % m as u128 != 0 {
                return Err(CharError::BadSpec(format!("'{s}' has order not dividing the generator order {o}")));
            }
            k[i] = (t / m as u128) as u64 % o;
        }
        MultChar::from_generator_phases(base, self.depth, k, self.uniformizer_value.value()?)
    }
}

/// A representation of E^× in the minimal case: one E-character when E is a
/// field, an ordered pair of F-characters when E is split.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TauSpec {
    Pair { chi1: CharSpec, chi2: CharSpec },
    Single { chi: CharSpec },
}

impl TauSpec {
    pub fn build(&self, alg: &EtaleAlgebra) -> Result<EtaleChar> {
        match self {
            TauSpec::Single { chi } => EtaleChar::field(chi.build(alg)?),
            TauSpec::Pair { chi1, chi2 } => EtaleChar::split(chi1.build(alg)?, chi2.build(alg)?),
        }
    }
}

/// The character π of U₁: for a field E it is η₁ = ν|_{E¹} given by an
/// E-character ν; for split E it is an F-character η.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiSpec {
    pub nu: CharSpec,
}

pub enum PiChar {
    Field(U1Char),
    Split(MultChar),
}

impl PiSpec {
    pub fn build(&self, alg: &EtaleAlgebra) -> Result<PiChar> {
        let nu = self.nu.build(alg)?;
        if alg.is_field() {
            Ok(PiChar::Field(U1Char::from_character(&nu)?))
        } else {
            Ok(PiChar::Split(nu))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lg_padic::PAdicField;

    #[test]
    fn parses_roots_and_builds() {
        assert_eq!(parse_root("root_of_unity: 3/8").unwrap(), (3, 8));
        assert!(parse_root("3/8").is_err());
        let f = PAdicField::new(3, 12).unwrap();
        let alg = EtaleAlgebra::split(f);
        let spec: CharSpec = serde_json::from_str(
            r#"{"base":"F","depth":1,"uniformizer_value":{"re":1.0,"im":0.0},"generator_values":["root_of_unity: 1/2"]}"#,
        )
        .unwrap();
        let chi = spec.build(&alg).unwrap();
        assert!((chi.eval_f(&f.from_i64(2)).unwrap() + 1.0).norm() < 1e-15);
        let bad = CharSpec { generator_values: vec!["root_of_unity: 1/3".into()], ..spec };
        assert!(bad.build(&alg).is_err());
    }
}
