use serde::{Deserialize, Serialize};

use super::{HomoPoly, Monomial, PolyError};
use crate::rational::{fmt_rat, parse_rat};

/// `{"vars": N+1, "terms": [{"exp": [...], "coef": "a/b"}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

impl From<&HomoPoly> for PolyJson {
    fn from(p: &HomoPoly) -> Self {
        PolyJson {
            vars: p.num_vars(),
            terms: p
                .terms()
                .map(|(m, c)| TermJson { exp: m.exponents().to_vec(), coef: fmt_rat(c) })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for HomoPoly {
    type Error = PolyError;

    fn try_from(j: &PolyJson) -> Result<Self, PolyError> {
        let terms = j
            .terms
            .iter()
            .map(|t| {
                if t.exp.len() != j.vars {
                    return Err(PolyError::DimensionMismatch { expected: j.vars, found: t.exp.len() });
                }
                let c = parse_rat(&t.coef).ok_or_else(|| PolyError::SyntaxError {
                    position: 0,
                    expected: format!("rational coefficient, got {:?}", t.coef),
                })?;
                Ok((Monomial::new(t.exp.clone()), c))
            })
            .collect::<Result<Vec<_>, _>>()?;
        HomoPoly::from_terms(j.vars, terms)
    }
}

impl Serialize for HomoPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomoPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        HomoPoly::try_from(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn encoding_shape() {
        let q = parse_poly("x0^2 - 1/2x1*x2", 3).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(
            s,
            r#"{"vars":3,"terms":[{"exp":[2,0,0],"coef":"1/1"},{"exp":[0,1,1],"coef":"-1/2"}]}"#
        );
        let back: HomoPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn rejects_bad_json() {
        let bad = r#"{"vars":2,"terms":[{"exp":[2,0],"coef":"1"},{"exp":[1],"coef":"1"}]}"#;
        assert!(serde_json::from_str::<HomoPoly>(bad).is_err());
        let inhom = r#"{"vars":2,"terms":[{"exp":[2,0],"coef":"1"},{"exp":[1,0],"coef":"1"}]}"#;
        assert!(serde_json::from_str::<HomoPoly>(inhom).is_err());
    }
}
