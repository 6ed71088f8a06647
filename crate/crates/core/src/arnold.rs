//! Commutator operator, centralizer dimension, miniversal families and the
//! transversality check.
//!
//! The orbit of `A` under conjugation has tangent space `Im(ad_A)` where
//! `ad_A(B) = AB - BA`. A first-order family `A + Σ t_i D_i` is transversal
//! when the `D_i` together with `Im(ad_A)` span all of `gl(n)`; the least
//! number of directions needed is `dim ker(ad_A)`, the centralizer dimension.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::document::{matrix_from_json, matrix_to_json};
use crate::error::{Error, Result};
use crate::exactq::{kernel_basis, QMatrix, Rational, Subspace};
use crate::jordan::{jordan_matrix, JordanType};

/// The `n² × n²` matrix of `B ↦ AB − BA` on row-major vectorized matrices.
pub fn ad_matrix(a: &QMatrix) -> Result<QMatrix> {
    let n = a.square_size()?;
    let nn = n * n;
    let mut out = QMatrix::zeros(nn, nn);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            // (A e_rs)_ij = A_ir [s = j]
            for r in 0..n {
                let v = &a[(i, r)];
                if !v.is_zero() {
                    out[(row, r * n + j)] += v;
                }
            }
            // (e_rs A)_ij = [r = i] A_sj
            for s in 0..n {
                let v = &a[(s, j)];
                if !v.is_zero() {
                    out[(row, i * n + s)] -= v;
                }
            }
        }
    }
    Ok(out)
}

/// `[A, B] = AB − BA`.
pub fn commutator(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Dimension of the space of matrices commuting with `A`, computed as the
/// kernel dimension of [`ad_matrix`].
pub fn centralizer_dim(a: &QMatrix) -> Result<usize> {
    Ok(kernel_basis(&ad_matrix(a)?).len())
}

/// Block formula for the centralizer dimension: for each eigenvalue with block
/// sizes `n_1 ≥ n_2 ≥ ⋯`, add `n_1 + 3 n_2 + 5 n_3 + ⋯`.
///
/// Symbolic eigenvalues are taken to be pairwise distinct.
pub fn arnold_count(jt: &JordanType) -> usize {
    jt.spectrum()
        .iter()
        .map(|(_, p)| p.odd_weighted_sum())
        .sum()
}

/// The span of `Im(ad_A)`, i.e. the tangent space to the conjugation orbit.
pub fn orbit_tangent_space(a: &QMatrix) -> Result<Subspace> {
    let n = a.square_size()?;
    let mut space = Subspace::new(n * n);
    for r in 0..n {
        for s in 0..n {
            let image = commutator(a, &QMatrix::unit(n, r, s))?;
            space.insert(image.entries())?;
        }
    }
    Ok(space)
}

/// First-order data of a deformation `A₀ + Σ λ_i D_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationFamily {
    base: QMatrix,
    directions: Vec<QMatrix>,
    parameter_names: Vec<String>,
}

impl DeformationFamily {
    pub fn new(
        base: QMatrix,
        directions: Vec<QMatrix>,
        parameter_names: Vec<String>,
    ) -> Result<Self> {
        let n = base.square_size()?;
        for (index, d) in directions.iter().enumerate() {
            if d.rows() != n || d.cols() != n {
                return Err(Error::ShapeMismatch {
                    expected: n,
                    index,
                    rows: d.rows(),
                    cols: d.cols(),
                });
            }
        }
        if directions.len() != parameter_names.len() {
            return Err(Error::DimensionMismatch {
                expected: directions.len(),
                found: parameter_names.len(),
            });
        }
        Ok(Self {
            base,
            directions,
            parameter_names,
        })
    }

    /// Parameters named `t1, t2, …`.
    pub fn with_default_names(base: QMatrix, directions: Vec<QMatrix>) -> Result<Self> {
        let names = (1..=directions.len()).map(|i| format!("t{i}")).collect();
        Self::new(base, directions, names)
    }

    pub fn base(&self) -> &QMatrix {
        &self.base
    }

    pub fn directions(&self) -> &[QMatrix] {
        &self.directions
    }

    pub fn parameter_names(&self) -> &[String] {
        &self.parameter_names
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// `A₀ + Σ λ_i D_i` at a concrete parameter point.
    pub fn evaluate(&self, params: &[Rational]) -> Result<QMatrix> {
        if params.len() != self.directions.len() {
            return Err(Error::DimensionMismatch {
                expected: self.directions.len(),
                found: params.len(),
            });
        }
        self.directions
            .iter()
            .zip(params)
            .try_fold(self.base.clone(), |acc, (d, t)| acc.add(&d.scale(t)))
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "base": matrix_to_json(&self.base),
            "directions": self.directions.iter().map(matrix_to_json).collect::<Vec<_>>(),
            "parameters": self.parameter_names,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidArgument(format!("deformation family: {what}"));
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        let base = matrix_from_json(obj.get("base").ok_or_else(|| bad("missing `base`"))?)?;
        let directions = obj
            .get("directions")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `directions` array"))?
            .iter()
            .map(matrix_from_json)
            .collect::<Result<Vec<_>>>()?;
        let names = obj
            .get("parameters")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `parameters` array"))?
            .iter()
            .map(|p| {
                p.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| bad("parameter names must be strings"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, directions, names)
    }
}

/// Positions of the free entries of a structured family (0-based internally,
/// 1-based in JSON).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarPattern {
    #[serde(rename = "stars", with = "one_based")]
    positions: Vec<(usize, usize)>,
}

mod one_based {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[(usize, usize)], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|&(r, c)| [r + 1, c + 1])
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(usize, usize)>, D::Error> {
        use serde::de::Error;
        Vec::<[usize; 2]>::deserialize(d)?
            .into_iter()
            .map(|[r, c]| {
                if r == 0 || c == 0 {
                    Err(D::Error::custom("star indices are 1-based"))
                } else {
                    Ok((r - 1, c - 1))
                }
            })
            .collect()
    }
}

impl StarPattern {
    /// Validates distinct in-bounds positions for an `n × n` matrix.
    pub fn new(n: usize, positions: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &(r, c) in &positions {
            if r >= n || c >= n {
                return Err(Error::InvalidArgument(format!(
                    "star ({}, {}) outside a {n}x{n} matrix",
                    r + 1,
                    c + 1
                )));
            }
            if !seen.insert((r, c)) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate star ({}, {})",
                    r + 1,
                    c + 1
                )));
            }
        }
        Ok(Self { positions })
    }

    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Family over `base` with one matrix-unit direction per star.
    pub fn family(&self, base: &QMatrix) -> Result<DeformationFamily> {
        let n = base.square_size()?;
        let dirs = self
            .positions
            .iter()
            .map(|&(r, c)| QMatrix::unit(n, r, c))
            .collect();
        DeformationFamily::with_default_names(base.clone(), dirs)
    }
}

/// `dim(Im(ad_base) + span(directions))`.
pub fn transversal_dim(f: &DeformationFamily) -> Result<usize> {
    let mut space = orbit_tangent_space(&f.base)?;
    for d in &f.directions {
        space.insert(d.entries())?;
    }
    Ok(space.dim())
}

/// First-order versality: the directions complete `Im(ad_base)` to `gl(n)`.
pub fn is_transversal(f: &DeformationFamily) -> Result<bool> {
    let n = f.base.rows();
    Ok(transversal_dim(f)? == n * n)
}

/// Picks matrix units in row-major order, keeping each one that is not already
/// in `Im(ad_A)` plus the units kept so far.
pub fn miniversal_greedy(a: &QMatrix) -> Result<DeformationFamily> {
    let n = a.square_size()?;
    let mut space = orbit_tangent_space(a)?;
    let mut dirs = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if space.dim() == n * n {
                break;
            }
            let unit = QMatrix::unit(n, r, c);
            if space.insert(unit.entries())? {
                dirs.push(unit);
            }
        }
    }
    DeformationFamily::with_default_names(a.clone(), dirs)
}

/// Block layout of a Jordan matrix: `(eigenvalue index, start, size)`.
fn block_layout(jt: &JordanType) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (ev, (_, p)) in jt.spectrum().iter().enumerate() {
        for &size in p.parts() {
            out.push((ev, start, size));
            start += size;
        }
    }
    out
}

/// Default star placement on `jordan_matrix(jt)`: for each ordered pair of
/// blocks `(i, j)` sharing an eigenvalue, the last row of the `(i, j)`
/// sub-block gets stars in its leftmost `min(n_i, n_j)` columns.
pub fn structured_pattern(jt: &JordanType) -> Result<StarPattern> {
    let layout = block_layout(jt);
    let mut stars = Vec::new();
    for &(ev_i, start_i, size_i) in &layout {
        for &(ev_j, start_j, size_j) in &layout {
            if ev_i != ev_j {
                continue;
            }
            let row = start_i + size_i - 1;
            stars.extend((0..size_i.min(size_j)).map(|k| (row, start_j + k)));
        }
    }
    stars.sort_unstable();
    StarPattern::new(jt.n(), stars)
}

/// Builds the family for `pattern` over `base` and rejects it unless it is
/// transversal.
pub fn gate_pattern(base: &QMatrix, pattern: &StarPattern) -> Result<DeformationFamily> {
    let family = pattern.family(base)?;
    let achieved = transversal_dim(&family)?;
    let required = base.rows() * base.rows();
    if achieved != required {
        return Err(Error::PatternNotTransversal { achieved, required });
    }
    Ok(family)
}

/// Miniversal family on the Jordan matrix of `jt` with the default star
/// placement, verified transversal.
pub fn miniversal_structured(jt: &JordanType) -> Result<(StarPattern, DeformationFamily)> {
    let base = jordan_matrix(jt)?;
    let pattern = structured_pattern(jt)?;
    let family = gate_pattern(&base, &pattern)?;
    Ok((pattern, family))
}

/// True iff `vec(A)` lies in `Im(ad_A)`; this holds exactly for nilpotent `A`.
pub fn is_in_own_orbit_tangent(a: &QMatrix) -> Result<bool> {
    orbit_tangent_space(a)?.contains(a.entries())
}

/// Codimension of the tangent space of the `GL(n) × C*` orbit
/// `(G, x)·A = x G⁻¹ A G`, i.e. `n² − dim(Im(ad_A) + span(A))`.
pub fn combined_orbit_codim(a: &QMatrix) -> Result<usize> {
    let n = a.square_size()?;
    let mut space = orbit_tangent_space(a)?;
    space.insert(a.entries())?;
    Ok(n * n - space.dim())
}

/// Miniversal parameter count under the scaled action, following the
/// published tables: one fewer than [`arnold_count`] except for nonzero
/// nilpotent matrices. The zero matrix gets `n² − 1` even though its tangent
/// codimension is `n²` (see [`combined_orbit_codim`]).
pub fn projective_count(jt: &JordanType) -> Result<usize> {
    jt.require_concrete()?;
    let count = arnold_count(jt);
    if jt.is_nilpotent() && !jt.is_zero_matrix() {
        Ok(count)
    } else {
        Ok(count.saturating_sub(1))
    }
}

/// True when the table value and the tangent-space count disagree, which
/// happens only at the zero matrix.
pub fn projective_discrepancy(jt: &JordanType) -> bool {
    jt.n() > 0 && jt.is_zero_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{int, rank, subspace_dim};
    use crate::jordan::jordan_type;

    fn j2_0() -> QMatrix {
        QMatrix::from_i64(&[&[0, 1], &[0, 0]])
    }

    fn units(n: usize, pos: &[(usize, usize)]) -> Vec<QMatrix> {
        pos.iter().map(|&(r, c)| QMatrix::unit(n, r, c)).collect()
    }

    #[test]
    fn ad_matrix_examples() {
        assert!(ad_matrix(&QMatrix::zeros(2, 2)).unwrap().is_zero());
        assert!(ad_matrix(&QMatrix::identity(3)).unwrap().is_zero());
        let ad = ad_matrix(&j2_0()).unwrap();
        assert_eq!(rank(&ad), 2);
        // By hand: [e12, e11] = -e12, [e12, e12] = 0, [e12, e21] = e11 - e22, [e12, e22] = e12.
        let columns: Vec<Vec<Rational>> = (0..4)
            .map(|c| (0..4).map(|r| ad[(r, c)].clone()).collect())
            .collect();
        let v = |xs: &[i64]| xs.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert_eq!(columns[0], v(&[0, -1, 0, 0]));
        assert_eq!(columns[1], v(&[0, 0, 0, 0]));
        assert_eq!(columns[2], v(&[1, 0, 0, -1]));
        assert_eq!(columns[3], v(&[0, 1, 0, 0]));
        assert!(ad_matrix(&QMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn ad_matrix_matches_commutator() {
        let a = QMatrix::from_i64(&[&[1, 2, 0], &[0, -1, 3], &[4, 0, 2]]);
        let b = QMatrix::from_i64(&[&[0, 1, 5], &[2, 0, -1], &[1, 1, 1]]);
        let ad = ad_matrix(&a).unwrap();
        let vec_b = QMatrix::new(9, 1, b.entries().to_vec()).unwrap();
        let image = ad.mul(&vec_b).unwrap();
        assert_eq!(image.entries(), commutator(&a, &b).unwrap().entries());
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(centralizer_dim(&QMatrix::zeros(2, 2)).unwrap(), 4);
        assert_eq!(centralizer_dim(&j2_0()).unwrap(), 2);
        assert_eq!(
            centralizer_dim(&QMatrix::diagonal(&[int(1), int(2)])).unwrap(),
            2
        );
    }

    #[test]
    fn arnold_count_examples() {
        use crate::jordan::Eigenvalue;
        use crate::partition::Partition;
        let sym = |spec: &[(&str, &[usize])]| {
            JordanType::new(
                spec.iter()
                    .map(|(s, b)| {
                        (
                            Eigenvalue::Symbol(s.to_string()),
                            Partition::new(b.to_vec()).unwrap(),
                        )
                    })
                    .collect(),
            )
            .unwrap()
        };
        assert_eq!(arnold_count(&sym(&[("p", &[1]), ("q", &[1])])), 2);
        assert_eq!(arnold_count(&sym(&[("p", &[1, 1])])), 4);
        assert_eq!(arnold_count(&sym(&[("p", &[1, 1, 1])])), 9);
        let big = JordanType::from_int_blocks(&[(7, &[3, 2, 2, 1])]).unwrap();
        assert_eq!(arnold_count(&big), 26);
    }

    #[test]
    fn arnold_count_large_block_against_kernel() {
        let big = JordanType::from_int_blocks(&[(7, &[3, 2, 2, 1])]).unwrap();
        assert_eq!(centralizer_dim(&jordan_matrix(&big).unwrap()).unwrap(), 26);
    }

    #[test]
    fn greedy_examples() {
        let f = miniversal_greedy(&QMatrix::diagonal(&[int(1), int(2)])).unwrap();
        assert_eq!(f.directions(), units(2, &[(0, 0), (1, 1)]).as_slice());
        let f = miniversal_greedy(&QMatrix::identity(2)).unwrap();
        assert_eq!(f.len(), 4);
        let f = miniversal_greedy(&j2_0()).unwrap();
        assert_eq!(f.directions(), units(2, &[(0, 0), (1, 0)]).as_slice());
        assert_eq!(f.parameter_names(), ["t1", "t2"]);
        assert!(is_transversal(&f).unwrap());
    }

    #[test]
    fn structured_examples() {
        let (p, f) =
            miniversal_structured(&JordanType::from_int_blocks(&[(0, &[2])]).unwrap()).unwrap();
        assert_eq!(p.positions(), [(1, 0), (1, 1)]);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"stars":[[2,1],[2,2]]}"#
        );
        assert!(is_transversal(&f).unwrap());

        let (p, _) =
            miniversal_structured(&JordanType::from_int_blocks(&[(-3, &[1, 1])]).unwrap()).unwrap();
        assert_eq!(p.len(), 4);

        let jt = JordanType::from_int_blocks(&[(1, &[2, 1])]).unwrap();
        let (p, f) = miniversal_structured(&jt).unwrap();
        // (1,1) sub-block: row 2, cols 1-2; (1,2): row 2, col 3; (2,1): row 3, col 1; (2,2): row 3, col 3.
        assert_eq!(p.positions(), [(1, 0), (1, 1), (1, 2), (2, 0), (2, 2)]);
        assert_eq!(f.len(), arnold_count(&jt));
    }

    #[test]
    fn structured_pattern_with_distinct_eigenvalues() {
        let jt = JordanType::from_int_blocks(&[(0, &[2]), (3, &[1, 1])]).unwrap();
        let (p, f) = miniversal_structured(&jt).unwrap();
        assert_eq!(
            p.positions(),
            [(1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]
        );
        assert!(is_transversal(&f).unwrap());
    }

    #[test]
    fn gate_rejects_first_row_pattern() {
        // e12 is tangent to the orbit of J2(0), so {e11, e12} cannot be a complement.
        let pattern = StarPattern::new(2, vec![(0, 0), (0, 1)]).unwrap();
        assert_eq!(
            gate_pattern(&j2_0(), &pattern),
            Err(Error::PatternNotTransversal {
                achieved: 3,
                required: 4
            })
        );
    }

    #[test]
    fn non_versal_upper_triangular_family() {
        // A(λ) = [[λ1, 1 + λ2], [0, λ3]]
        let f = DeformationFamily::with_default_names(j2_0(), units(2, &[(0, 0), (0, 1), (1, 1)]))
            .unwrap();
        assert!(!is_transversal(&f).unwrap());
        let q = DeformationFamily::with_default_names(
            j2_0(),
            units(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]),
        )
        .unwrap();
        assert!(is_transversal(&q).unwrap());
    }

    #[test]
    fn all_units_always_transversal() {
        let a = QMatrix::from_i64(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let all: Vec<_> = (0..3).flat_map(|r| (0..3).map(move |c| (r, c))).collect();
        let f = DeformationFamily::with_default_names(a, units(3, &all)).unwrap();
        assert!(is_transversal(&f).unwrap());
    }

    #[test]
    fn family_shape_errors() {
        let err = DeformationFamily::with_default_names(j2_0(), vec![QMatrix::zeros(3, 3)]);
        assert!(matches!(err, Err(Error::ShapeMismatch { index: 0, .. })));
        assert!(DeformationFamily::new(j2_0(), vec![], vec!["t".into()]).is_err());
    }

    #[test]
    fn family_json_round_trip_and_evaluate() {
        let f = miniversal_greedy(&j2_0()).unwrap();
        let back = DeformationFamily::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let m = f.evaluate(&[int(2), int(3)]).unwrap();
        assert_eq!(m, QMatrix::from_i64(&[&[2, 1], &[3, 0]]));
    }

    #[test]
    fn combined_codim_examples() {
        assert_eq!(combined_orbit_codim(&QMatrix::identity(2)).unwrap(), 3);
        assert_eq!(combined_orbit_codim(&j2_0()).unwrap(), 2);
        assert_eq!(combined_orbit_codim(&QMatrix::zeros(2, 2)).unwrap(), 4);
    }

    #[test]
    fn projective_examples() {
        let t = |spec: &[(i64, &[usize])]| JordanType::from_int_blocks(spec).unwrap();
        assert_eq!(projective_count(&t(&[(1, &[1, 1, 1, 1])])).unwrap(), 15);
        assert_eq!(projective_count(&t(&[(0, &[4])])).unwrap(), 4);
        assert_eq!(projective_count(&t(&[(0, &[1, 1])])).unwrap(), 3);
        assert!(projective_discrepancy(&t(&[(0, &[1, 1])])));
        assert!(!projective_discrepancy(&t(&[(0, &[2])])));
    }

    #[test]
    fn nilpotency_criterion_on_examples() {
        assert!(is_in_own_orbit_tangent(&j2_0()).unwrap());
        assert!(is_in_own_orbit_tangent(&QMatrix::zeros(3, 3)).unwrap());
        assert!(!is_in_own_orbit_tangent(&QMatrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap());
    }

    #[test]
    fn rank_nullity_of_ad() {
        let a = QMatrix::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, -1]]);
        let ad = ad_matrix(&a).unwrap();
        assert_eq!(rank(&ad) + centralizer_dim(&a).unwrap(), 9);
        let jt = jordan_type(&a).unwrap();
        assert_eq!(centralizer_dim(&a).unwrap(), arnold_count(&jt));
        let dirs: Vec<Vec<Rational>> = miniversal_greedy(&a)
            .unwrap()
            .directions()
            .iter()
            .map(|d| d.entries().to_vec())
            .collect();
        assert_eq!(subspace_dim(&dirs).unwrap(), arnold_count(&jt));
    }
}
