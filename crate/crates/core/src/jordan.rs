//! Exact Jordan types of rational matrices.
//!
//! Block sizes are read off rank sequences: with `r_k = rank((M - vI)^k)` and
//! `r_0 = n`, the number of blocks of size at least `k` for eigenvalue `v` is
//! `r_{k-1} - r_k`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactq::{
    self, char_poly, format_rational, parse_rational, rational_roots, QMatrix, Rational,
};
use crate::partition::{partitions, Partition};

/// An eigenvalue label: a concrete rational, or a named symbol standing for a
/// generic value distinct from every other label in the same type.
///
/// Rationals sort before symbols; symbols sort lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eigenvalue {
    Value(Rational),
    Symbol(String),
}

impl Eigenvalue {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Eigenvalue::Value(v) => Some(v),
            Eigenvalue::Symbol(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value().is_some_and(Zero::is_zero)
    }
}

impl From<Rational> for Eigenvalue {
    fn from(v: Rational) -> Self {
        Eigenvalue::Value(v)
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Value(v) => write!(f, "{}", format_rational(v)),
            Eigenvalue::Symbol(s) => write!(f, "{s}"),
        }
    }
}

/// The conjugation invariant of a square matrix: each distinct eigenvalue with
/// the partition of its Jordan block sizes, in canonical eigenvalue order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanType {
    n: usize,
    spectrum: Vec<(Eigenvalue, Partition)>,
}

impl JordanType {
    pub fn new(mut spectrum: Vec<(Eigenvalue, Partition)>) -> Result<Self> {
        spectrum.sort_by(|a, b| a.0.cmp(&b.0));
        if spectrum.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidJordanType("repeated eigenvalue".into()));
        }
        if let Some((v, _)) = spectrum.iter().find(|(_, p)| p.is_empty()) {
            return Err(Error::InvalidJordanType(format!(
                "eigenvalue {v} has no blocks"
            )));
        }
        let n = spectrum.iter().map(|(_, p)| p.weight()).sum();
        Ok(Self { n, spectrum })
    }

    /// Convenience constructor for concrete integer eigenvalues.
    pub fn from_int_blocks(spec: &[(i64, &[usize])]) -> Result<Self> {
        Self::new(
            spec.iter()
                .map(|&(v, b)| {
                    Ok((
                        Eigenvalue::Value(exactq::int(v)),
                        Partition::new(b.to_vec())?,
                    ))
                })
                .collect::<Result<_>>()?,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spectrum(&self) -> &[(Eigenvalue, Partition)] {
        &self.spectrum
    }

    pub fn blocks(&self, v: &Eigenvalue) -> Option<&Partition> {
        self.spectrum.iter().find(|(e, _)| e == v).map(|(_, p)| p)
    }

    pub fn is_concrete(&self) -> bool {
        self.spectrum.iter().all(|(v, _)| v.value().is_some())
    }

    fn first_symbol(&self) -> Option<&str> {
        self.spectrum.iter().find_map(|(v, _)| match v {
            Eigenvalue::Symbol(s) => Some(s.as_str()),
            Eigenvalue::Value(_) => None,
        })
    }

    /// Errors with `SymbolicEigenvalue` if any eigenvalue is a symbol.
    pub fn require_concrete(&self) -> Result<()> {
        match self.first_symbol() {
            Some(s) => Err(Error::SymbolicEigenvalue(s.to_string())),
            None => Ok(()),
        }
    }

    /// All eigenvalues are zero (the empty type counts as nilpotent).
    pub fn is_nilpotent(&self) -> bool {
        self.spectrum.iter().all(|(v, _)| v.is_zero())
    }

    /// The type of the zero matrix: nilpotent with only 1×1 blocks.
    pub fn is_zero_matrix(&self) -> bool {
        self.is_nilpotent() && self.spectrum.iter().all(|(_, p)| p.largest() <= 1)
    }

    /// Algebraic multiplicities by eigenvalue.
    pub fn multiplicities(&self) -> Vec<(&Eigenvalue, usize)> {
        self.spectrum.iter().map(|(v, p)| (v, p.weight())).collect()
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, p)) in self.spectrum.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}: {p}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumEntryDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symbol: Option<String>,
    blocks: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JordanTypeDoc {
    n: usize,
    spectrum: Vec<SpectrumEntryDoc>,
}

impl Serialize for JordanType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let doc = JordanTypeDoc {
            n: self.n,
            spectrum: self
                .spectrum
                .iter()
                .map(|(v, p)| SpectrumEntryDoc {
                    value: v.value().map(format_rational),
                    symbol: match v {
                        Eigenvalue::Symbol(s) => Some(s.clone()),
                        Eigenvalue::Value(_) => None,
                    },
                    blocks: p.parts().to_vec(),
                })
                .collect(),
        };
        doc.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JordanType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = JordanTypeDoc::deserialize(deserializer)?;
        let spectrum = doc
            .spectrum
            .into_iter()
            .map(|e| {
                let label = match (e.value, e.symbol) {
                    (Some(v), None) => Eigenvalue::Value(parse_rational(&v)?),
                    (None, Some(s)) if !s.is_empty() => Eigenvalue::Symbol(s),
                    _ => {
                        return Err(Error::InvalidJordanType(
                            "each spectrum entry needs exactly one of `value` or `symbol`".into(),
                        ))
                    }
                };
                Ok((label, Partition::from_unsorted(e.blocks)?))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let jt = JordanType::new(spectrum).map_err(D::Error::custom)?;
        if jt.n != doc.n {
            return Err(D::Error::custom(format!(
                "declared n = {} but blocks sum to {}",
                doc.n, jt.n
            )));
        }
        Ok(jt)
    }
}

/// `[rank((M - vI)^k) for k = 0, 1, ...]` until the sequence stabilizes.
pub fn rank_sequence(m: &QMatrix, v: &Rational) -> Result<Vec<usize>> {
    let n = m.square_size()?;
    let shifted = m.shift(v)?;
    let mut ranks = vec![n];
    let mut power = shifted.clone();
    loop {
        let r = exactq::rank(&power);
        let last = *ranks.last().unwrap();
        ranks.push(r);
        if r == last {
            break;
        }
        power = power.mul(&shifted)?;
    }
    ranks.pop();
    Ok(ranks)
}

/// Block partition of eigenvalue `v` from its rank sequence.
fn blocks_from_ranks(ranks: &[usize]) -> Result<Partition> {
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(Partition::new(at_least)?.conjugate())
}

/// Exact Jordan type of a rational matrix.
pub fn jordan_type(m: &QMatrix) -> Result<JordanType> {
    let poly = char_poly(m)?;
    let roots = rational_roots(&poly);
    if !roots.splits() {
        return Err(Error::IrrationalSpectrum {
            factor: roots.residual.to_string(),
        });
    }
    let spectrum = roots
        .roots
        .iter()
        .map(|(v, _)| {
            let ranks = rank_sequence(m, v)?;
            Ok((Eigenvalue::Value(v.clone()), blocks_from_ranks(&ranks)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let jt = JordanType::new(spectrum)?;
    debug_assert!(jt
        .multiplicities()
        .iter()
        .all(|(v, m)| roots.multiplicity(v.value().unwrap()) == *m));
    Ok(jt)
}

/// The `size × size` Jordan block with `v` on the diagonal and 1 above it.
pub fn jordan_block(v: &Rational, size: usize) -> QMatrix {
    QMatrix::from_fn(size, size, |r, c| {
        if r == c {
            v.clone()
        } else if r + 1 == c {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Block-diagonal Jordan matrix: eigenvalues in canonical order, block sizes
/// decreasing within each eigenvalue.
pub fn jordan_matrix(jt: &JordanType) -> Result<QMatrix> {
    jt.require_concrete()?;
    let blocks: Vec<QMatrix> = jt
        .spectrum
        .iter()
        .flat_map(|(v, p)| {
            let v = v.value().unwrap().clone();
            p.parts()
                .iter()
                .map(move |&s| jordan_block(&v, s))
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(QMatrix::block_diag(&blocks))
}

/// Every Jordan type of size `n` whose eigenvalues are drawn from `pool`
/// (duplicates in the pool are ignored). Output is sorted.
pub fn enumerate_jordan_types(n: usize, pool: &[Rational]) -> Vec<JordanType> {
    let pool: Vec<Rational> = pool
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    fn rec(
        pool: &[Rational],
        idx: usize,
        remaining: usize,
        acc: &mut Vec<(Eigenvalue, Partition)>,
        out: &mut Vec<JordanType>,
    ) {
        if remaining == 0 {
            out.push(JordanType::new(acc.clone()).expect("distinct pool values"));
            return;
        }
        if idx == pool.len() {
            return;
        }
        rec(pool, idx + 1, remaining, acc, out);
        for weight in 1..=remaining {
            for p in partitions(weight) {
                acc.push((Eigenvalue::Value(pool[idx].clone()), p));
                rec(pool, idx + 1, remaining - weight, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&pool, 0, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::int;

    #[test]
    fn jordan_type_examples() {
        let j = jordan_type(&QMatrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(j, JordanType::from_int_blocks(&[(1, &[2])]).unwrap());

        let d = jordan_type(&QMatrix::diagonal(&[int(1), int(1), int(2)])).unwrap();
        assert_eq!(
            d,
            JordanType::from_int_blocks(&[(1, &[1, 1]), (2, &[1])]).unwrap()
        );
    }

    #[test]
    fn nilpotent_two_two() {
        let mut m = QMatrix::zeros(4, 4);
        m[(0, 1)] = int(1);
        m[(2, 3)] = int(1);
        assert_eq!(rank_sequence(&m, &int(0)).unwrap(), vec![4, 2, 0]);
        assert_eq!(
            jordan_type(&m).unwrap(),
            JordanType::from_int_blocks(&[(0, &[2, 2])]).unwrap()
        );
    }

    #[test]
    fn irrational_spectrum_names_factor() {
        let rot = QMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert_eq!(
            jordan_type(&rot),
            Err(Error::IrrationalSpectrum {
                factor: "x^2 + 1".into()
            })
        );
        assert!(matches!(
            jordan_type(&QMatrix::zeros(1, 2)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn jordan_matrix_examples() {
        let j = jordan_matrix(&JordanType::from_int_blocks(&[(1, &[2])]).unwrap()).unwrap();
        assert_eq!(j, QMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        let z = jordan_matrix(&JordanType::from_int_blocks(&[(0, &[1, 1])]).unwrap()).unwrap();
        assert_eq!(z, QMatrix::zeros(2, 2));
        let m = jordan_matrix(&JordanType::from_int_blocks(&[(5, &[1]), (2, &[2, 1])]).unwrap())
            .unwrap();
        assert_eq!(
            m,
            QMatrix::from_i64(&[&[2, 1, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 5]])
        );
        let sym = JordanType::new(vec![(
            Eigenvalue::Symbol("p".into()),
            Partition::new(vec![1]).unwrap(),
        )])
        .unwrap();
        assert_eq!(
            jordan_matrix(&sym),
            Err(Error::SymbolicEigenvalue("p".into()))
        );
    }

    #[test]
    fn canonical_order_and_validation() {
        let jt = JordanType::new(vec![
            (
                Eigenvalue::Symbol("q".into()),
                Partition::new(vec![1]).unwrap(),
            ),
            (Eigenvalue::Value(int(3)), Partition::new(vec![1]).unwrap()),
            (
                Eigenvalue::Symbol("p".into()),
                Partition::new(vec![2]).unwrap(),
            ),
            (Eigenvalue::Value(int(-1)), Partition::new(vec![1]).unwrap()),
        ])
        .unwrap();
        assert_eq!(jt.to_string(), "{-1: (1), 3: (1), p: (2), q: (1)}");
        assert_eq!(jt.n(), 5);
        assert!(JordanType::from_int_blocks(&[(1, &[1]), (1, &[2])]).is_err());
    }

    #[test]
    fn json_shape() {
        let jt = JordanType::from_int_blocks(&[(1, &[2, 1]), (5, &[1])]).unwrap();
        let s = serde_json::to_string(&jt).unwrap();
        assert_eq!(
            s,
            r#"{"n":4,"spectrum":[{"value":"1","blocks":[2,1]},{"value":"5","blocks":[1]}]}"#
        );
        let back: JordanType = serde_json::from_str(&s).unwrap();
        assert_eq!(back, jt);
        let sym: JordanType =
            serde_json::from_str(r#"{"n":2,"spectrum":[{"symbol":"p","blocks":[1,1]}]}"#).unwrap();
        assert!(!sym.is_concrete());
        assert!(serde_json::from_str::<JordanType>(
            r#"{"n":3,"spectrum":[{"value":"1","blocks":[1]}]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<JordanType>(
            r#"{"n":1,"spectrum":[{"value":"1","symbol":"p","blocks":[1]}]}"#
        )
        .is_err());
    }

    #[test]
    fn enumeration_small() {
        // n = 2 over {0, 1}: {0:(2)}, {0:(1,1)}, {1:(2)}, {1:(1,1)}, {0:(1),1:(1)}
        let types = enumerate_jordan_types(2, &[int(0), int(1)]);
        assert_eq!(types.len(), 5);
        assert!(types.iter().all(|t| t.n() == 2));
    }

    #[test]
    fn round_trip_all_small_types() {
        let pool: Vec<Rational> = (0..5).map(int).collect();
        for n in 1..=4 {
            for jt in enumerate_jordan_types(n, &pool) {
                let m = jordan_matrix(&jt).unwrap();
                assert_eq!(jordan_type(&m).unwrap(), jt);
            }
        }
    }
}
