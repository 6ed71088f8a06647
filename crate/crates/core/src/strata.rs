//! Partition-indexed strata of `gl(n)`.
//!
//! A partition `m_1 ≥ ⋯ ≥ m_k` of `n` gives a template with parameters
//! `p_1, …, p_k`: the direct sum over `j = 1..=m_1` of the upper bidiagonal
//! factor whose diagonal lists `{p_i : m_i ≥ j}` (increasing `i`) and whose
//! superdiagonal is all ones. Each factor is nonderogatory, so an eigenvalue
//! shared by parameters with part sizes `S` has block partition `conj(S)`.
//! The conjugation count `Σ m_i²` is therefore the same at every point.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arnold::{arnold_count, combined_orbit_codim, projective_count};
use crate::error::{Error, Result};
use crate::exactq::{format_rational, int, QMatrix, Rational};
use crate::jordan::{jordan_matrix, jordan_type, Eigenvalue, JordanType};
use crate::partition::{dominance_failure, partitions, Partition};

/// One stratum per partition of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Stratum {
    n: usize,
    parts: Partition,
}

impl Stratum {
    pub fn new(parts: Partition) -> Self {
        Self {
            n: parts.weight(),
            parts,
        }
    }

    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        Ok(Self::new(Partition::new(parts.to_vec())?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &Partition {
        &self.parts
    }

    /// Number of template parameters.
    pub fn param_len(&self) -> usize {
        self.parts.len()
    }

    /// `Σ m_i²`.
    pub fn conjugation_count(&self) -> usize {
        self.parts.sum_of_squares()
    }

    pub fn parameter_names(&self) -> Vec<String> {
        parameter_names(self.param_len())
    }

    /// Parameter indices on the diagonal of each bidiagonal factor.
    pub fn factors(&self) -> Vec<Vec<usize>> {
        let parts = self.parts.parts();
        (1..=self.parts.largest())
            .map(|j| (0..parts.len()).filter(|&i| parts[i] >= j).collect())
            .collect()
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts)
    }
}

/// `p, q, r, s, t, u, v, w, x, y, z`, then `p12, p13, …`.
pub fn parameter_names(k: usize) -> Vec<String> {
    const LETTERS: [&str; 11] = ["p", "q", "r", "s", "t", "u", "v", "w", "x", "y", "z"];
    (0..k)
        .map(|i| {
            LETTERS
                .get(i)
                .map_or_else(|| format!("p{}", i + 1), |s| s.to_string())
        })
        .collect()
}

/// All strata of `gl(n)`, partitions in reverse-lexicographic order.
pub fn enumerate_strata(n: usize) -> Result<Vec<Stratum>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(partitions(n).into_iter().map(Stratum::new).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolicEntry {
    Const(Rational),
    Param(usize),
}

/// A square matrix whose entries are constants or template parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    n: usize,
    entries: Vec<SymbolicEntry>,
    names: Vec<String>,
}

impl SymbolicMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, r: usize, c: usize) -> &SymbolicEntry {
        &self.entries[r * self.n + c]
    }

    pub fn parameter_names(&self) -> &[String] {
        &self.names
    }

    fn entry_text(&self, e: &SymbolicEntry) -> String {
        match e {
            SymbolicEntry::Const(v) => format_rational(v),
            SymbolicEntry::Param(i) => self.names[*i].clone(),
        }
    }

    /// Substitutes `values[i]` for parameter `i`.
    pub fn instantiate(&self, values: &[Rational]) -> Result<QMatrix> {
        if values.len() < self.names.len() {
            return Err(Error::UnassignedParameter {
                index: values.len(),
            });
        }
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                SymbolicEntry::Const(v) => v.clone(),
                SymbolicEntry::Param(i) => values[*i].clone(),
            })
            .collect();
        QMatrix::new(self.n, self.n, entries)
    }

    /// Rows of entry strings, e.g. `[["p","1"],["0","q"]]`.
    pub fn to_json(&self) -> Value {
        json!((0..self.n)
            .map(|r| (0..self.n)
                .map(|c| self.entry_text(self.entry(r, c)))
                .collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }
}

impl fmt::Display for SymbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| self.entry_text(e)).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.n {
            write!(f, "[")?;
            for c in 0..self.n {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[r * self.n + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// The stratum template: direct sum of bidiagonal factors, factor `j` carrying
/// the parameters whose part size is at least `j`.
pub fn template(s: &Stratum) -> SymbolicMatrix {
    let n = s.n;
    let mut entries = vec![SymbolicEntry::Const(Rational::zero()); n * n];
    let mut start = 0;
    for factor in s.factors() {
        for (offset, &param) in factor.iter().enumerate() {
            let d = start + offset;
            entries[d * n + d] = SymbolicEntry::Param(param);
            if offset + 1 < factor.len() {
                entries[d * n + d + 1] = SymbolicEntry::Const(Rational::one());
            }
        }
        start += factor.len();
    }
    SymbolicMatrix {
        n,
        entries,
        names: s.parameter_names(),
    }
}

fn type_from_groups<K: Ord + Clone>(
    s: &Stratum,
    labels: &[K],
    to_eigenvalue: impl Fn(&K) -> Eigenvalue,
) -> Result<JordanType> {
    let mut groups: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for (i, label) in labels.iter().enumerate() {
        groups
            .entry(label.clone())
            .or_default()
            .push(s.parts.parts()[i]);
    }
    let spectrum = groups
        .into_iter()
        .map(|(label, sizes)| {
            Ok((
                to_eigenvalue(&label),
                Partition::from_unsorted(sizes)?.conjugate(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    JordanType::new(spectrum)
}

/// Jordan type of the template at a parameter point, from the part sizes
/// sharing each value.
pub fn template_jordan_type(s: &Stratum, values: &[Rational]) -> Result<JordanType> {
    let k = s.param_len();
    if values.len() < k {
        return Err(Error::UnassignedParameter {
            index: values.len(),
        });
    }
    type_from_groups(s, &values[..k], |v| Eigenvalue::Value(v.clone()))
}

/// Jordan type at a generic point, eigenvalues named after the parameters.
pub fn generic_jordan_type(s: &Stratum) -> JordanType {
    let names = s.parameter_names();
    type_from_groups(s, &names, |name| Eigenvalue::Symbol(name.clone()))
        .expect("generic type is valid")
}

/// A matrix placed in its stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub stratum: Stratum,
    /// Canonical representative: parts decreasing, equal parts by ascending value.
    pub assignment: Vec<Rational>,
    pub jordan_type: JordanType,
}

impl Classification {
    pub fn assignment_json(&self) -> Value {
        json!(self
            .stratum
            .parameter_names()
            .into_iter()
            .zip(&self.assignment)
            .map(|(name, v)| json!({"parameter": name, "value": format_rational(v)}))
            .collect::<Vec<_>>())
    }
}

/// Places a concrete Jordan type: eigenvalue `v` with blocks `β` occupies the
/// parts `conj(β)`.
pub fn classify_type(jt: &JordanType) -> Result<Classification> {
    jt.require_concrete()?;
    let mut slots: Vec<(usize, Rational)> = Vec::new();
    for (v, blocks) in jt.spectrum() {
        let v = v.value().unwrap();
        slots.extend(blocks.conjugate().parts().iter().map(|&m| (m, v.clone())));
    }
    slots.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let parts = Partition::new(slots.iter().map(|(m, _)| *m).collect())?;
    let stratum = Stratum::new(parts);
    let assignment: Vec<Rational> = slots.into_iter().map(|(_, v)| v).collect();
    let check = template_jordan_type(&stratum, &assignment)?;
    debug_assert_eq!(&check, jt);
    Ok(Classification {
        stratum,
        assignment,
        jordan_type: jt.clone(),
    })
}

/// Stratum and canonical parameter values of a rational matrix.
pub fn classify(m: &QMatrix) -> Result<Classification> {
    classify_type(&jordan_type(m)?)
}

/// Groups of parameter indices that may be permuted among themselves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetrySpec {
    pub orbits: Vec<Vec<usize>>,
}

impl SymmetrySpec {
    pub fn is_trivial(&self) -> bool {
        self.orbits.is_empty()
    }

    /// `"Σ2×Σ3"`, or an empty string for the trivial group.
    pub fn group_label(&self) -> String {
        self.orbits
            .iter()
            .map(|o| format!("Σ{}", o.len()))
            .collect::<Vec<_>>()
            .join("×")
    }
}

/// One orbit per maximal run of equal part sizes of length at least two.
pub fn symmetry(s: &Stratum) -> SymmetrySpec {
    let parts = s.parts.parts();
    let mut orbits = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        let j = (i..parts.len())
            .find(|&j| parts[j] != parts[i])
            .unwrap_or(parts.len());
        if j - i > 1 {
            orbits.push((i..j).collect());
        }
        i = j;
    }
    SymmetrySpec { orbits }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    Conjugation,
    ProjectiveGeneric,
}

pub fn stratum_param_count(s: &Stratum, action: Action) -> usize {
    match action {
        Action::Conjugation => s.conjugation_count(),
        Action::ProjectiveGeneric => s.conjugation_count() - 1,
    }
}

/// Orbifold parameterization label: `C^k/Σ…` or `CP^(k-1)/Σ…`.
pub fn parameterization_label(s: &Stratum, action: Action) -> String {
    let k = s.param_len();
    let space = match action {
        Action::Conjugation => format!("C^{k}"),
        Action::ProjectiveGeneric => format!("CP^{}", k - 1),
    };
    let sym = symmetry(s);
    if sym.is_trivial() {
        space
    } else {
        format!("{space}/{}", sym.group_label())
    }
}

/// Why a jump deformation does or does not exist between two types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JumpReason {
    Identical,
    CharPolyDiffers,
    /// Prefix sums of the target blocks fall below the source at position `k`.
    DominanceFails {
        eigenvalue: Eigenvalue,
        k: usize,
        from: Vec<usize>,
        to: Vec<usize>,
    },
    /// Every eigenvalue's target blocks dominate the source blocks.
    Dominates {
        chains: Vec<(Eigenvalue, Vec<usize>, Vec<usize>)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpVerdict {
    pub exists: bool,
    pub reason: JumpReason,
}

impl fmt::Display for JumpReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JumpReason::Identical => write!(f, "the Jordan types are identical"),
            JumpReason::CharPolyDiffers => write!(f, "characteristic polynomials differ"),
            JumpReason::DominanceFails { eigenvalue, k, from, to } => write!(
                f,
                "dominance fails at k={k} for eigenvalue {eigenvalue}: prefix sums {to:?} (to) vs {from:?} (from)"
            ),
            JumpReason::Dominates { .. } => {
                write!(f, "target blocks dominate source blocks for every eigenvalue")
            }
        }
    }
}

/// Decides whether `from` degenerates to `to` along a jump deformation: same
/// characteristic polynomial, distinct types, and `to`'s blocks dominating
/// `from`'s for every eigenvalue.
pub fn jump_analysis(from: &JordanType, to: &JordanType) -> Result<JumpVerdict> {
    if from.n() != to.n() {
        return Err(Error::SizeMismatch {
            left: from.n(),
            right: to.n(),
        });
    }
    if from == to {
        return Ok(JumpVerdict {
            exists: false,
            reason: JumpReason::Identical,
        });
    }
    if from.multiplicities() != to.multiplicities() {
        return Ok(JumpVerdict {
            exists: false,
            reason: JumpReason::CharPolyDiffers,
        });
    }
    let mut chains = Vec::new();
    for ((v, p_from), (_, p_to)) in from.spectrum().iter().zip(to.spectrum()) {
        let len = p_from.len().max(p_to.len());
        let from_sums = p_from.prefix_sums(len);
        let to_sums = p_to.prefix_sums(len);
        if let Some(k) = dominance_failure(p_to, p_from)? {
            return Ok(JumpVerdict {
                exists: false,
                reason: JumpReason::DominanceFails {
                    eigenvalue: v.clone(),
                    k,
                    from: from_sums,
                    to: to_sums,
                },
            });
        }
        chains.push((v.clone(), from_sums, to_sums));
    }
    Ok(JumpVerdict {
        exists: true,
        reason: JumpReason::Dominates { chains },
    })
}

pub fn jump_exists(from: &JordanType, to: &JordanType) -> Result<bool> {
    Ok(jump_analysis(from, to)?.exists)
}

/// Set partitions of `k` labelled parameters as restricted growth strings:
/// `pattern[i]` is the value class of parameter `i`.
pub fn collision_patterns(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, acc: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        let limit = if acc.is_empty() { 0 } else { max + 1 };
        for c in 0..=limit {
            acc.push(c);
            rec(k, acc, max.max(c), out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), 0, &mut out);
    out
}

/// Every Jordan type the template of `s` takes as its parameters range over
/// `pool`.
pub fn realized_types(s: &Stratum, pool: &[Rational]) -> Result<BTreeSet<JordanType>> {
    let k = s.param_len();
    let mut out = BTreeSet::new();
    if pool.is_empty() {
        return Ok(out);
    }
    let mut idx = vec![0usize; k];
    loop {
        let values: Vec<Rational> = idx.iter().map(|&i| pool[i].clone()).collect();
        out.insert(template_jordan_type(s, &values)?);
        let Some(pos) = (0..k).rev().find(|&p| idx[p] + 1 < pool.len()) else {
            break;
        };
        idx[pos] += 1;
        for i in idx.iter_mut().skip(pos + 1) {
            *i = 0;
        }
    }
    Ok(out)
}

/// Directed stratum pairs `(S₁, S₂)` such that some type realized in `S₁`
/// jumps to some type realized in `S₂`, with eigenvalues drawn from `pool`.
pub fn stratum_adjacency(n: usize, pool: &[Rational]) -> Result<Vec<(Stratum, Stratum)>> {
    let distinct: BTreeSet<&Rational> = pool.iter().collect();
    if distinct.len() < n {
        return Err(Error::InvalidArgument(format!(
            "eigenvalue pool has {} distinct values, need at least {n}",
            distinct.len()
        )));
    }
    let strata = enumerate_strata(n)?;
    let realized = strata
        .iter()
        .map(|s| realized_types(s, pool))
        .collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for (i, from) in strata.iter().enumerate() {
        for (j, to) in strata.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut found = false;
            'search: for a in &realized[i] {
                for b in &realized[j] {
                    if jump_exists(a, b)? {
                        found = true;
                        break 'search;
                    }
                }
            }
            if found {
                edges.push((from.clone(), to.clone()));
            }
        }
    }
    edges.sort();
    Ok(edges)
}

/// Transitive closure of a directed edge list, sorted.
pub fn transitive_closure(edges: &[(Stratum, Stratum)]) -> Vec<(Stratum, Stratum)> {
    let mut closure: BTreeSet<(Stratum, Stratum)> = edges.iter().cloned().collect();
    loop {
        let mut added = Vec::new();
        for (a, b) in &closure {
            for (c, d) in &closure {
                if b == c && a != d && !closure.contains(&(a.clone(), d.clone())) {
                    added.push((a.clone(), d.clone()));
                }
            }
        }
        if added.is_empty() {
            break;
        }
        closure.extend(added);
    }
    closure.into_iter().collect()
}

/// One row of a stratification table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumRow {
    /// Letter label: `A` is the stratum with all parts equal to one.
    pub label: String,
    pub stratum: Stratum,
    pub template: SymbolicMatrix,
    pub symmetry: SymmetrySpec,
    pub conjugation_parameterization: String,
    pub conjugation_count: usize,
    pub projective_parameterization: String,
    pub projective_generic: usize,
    /// Projective count at the point with every parameter zero.
    pub projective_at_zero: usize,
    /// Tangent-space codimension of the combined action at that point.
    pub combined_codim_at_zero: usize,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataTable {
    pub n: usize,
    pub rows: Vec<StratumRow>,
}

fn row_label(index_from_generic: usize) -> String {
    if index_from_generic < 26 {
        char::from(b'A' + index_from_generic as u8).to_string()
    } else {
        format!("S{}", index_from_generic + 1)
    }
}

/// Builds the per-stratum table for `gl(n)`.
pub fn strata_table(n: usize) -> Result<StrataTable> {
    let strata = enumerate_strata(n)?;
    let count = strata.len();
    let mut rows = Vec::with_capacity(count);
    for (idx, s) in strata.into_iter().enumerate() {
        let k = s.param_len();
        let generic_values: Vec<Rational> = (1..=k as i64).map(int).collect();
        let generic = projective_count(&template_jordan_type(&s, &generic_values)?)?;
        debug_assert_eq!(generic, stratum_param_count(&s, Action::ProjectiveGeneric));

        let zeros = vec![Rational::zero(); k];
        let zero_type = template_jordan_type(&s, &zeros)?;
        let at_zero = projective_count(&zero_type)?;
        let codim = combined_orbit_codim(&jordan_matrix(&zero_type)?)?;
        let mut warnings = Vec::new();
        if codim != at_zero {
            warnings.push(format!(
                "zero matrix: table value {at_zero} (n²−1) differs from the combined-action tangent codimension {codim} (n²)"
            ));
        }
        rows.push(StratumRow {
            label: row_label(count - 1 - idx),
            template: template(&s),
            symmetry: symmetry(&s),
            conjugation_parameterization: parameterization_label(&s, Action::Conjugation),
            conjugation_count: arnold_count(&generic_jordan_type(&s)),
            projective_parameterization: parameterization_label(&s, Action::ProjectiveGeneric),
            projective_generic: generic,
            projective_at_zero: at_zero,
            combined_codim_at_zero: codim,
            warnings,
            stratum: s,
        });
    }
    Ok(StrataTable { n, rows })
}

/// The tables for `gl(2)`, `gl(3)` and `gl(4)`.
pub fn published_tables(n: usize) -> Result<StrataTable> {
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "published tables cover n = 2, 3, 4, not {n}"
        )));
    }
    strata_table(n)
}

impl StrataTable {
    pub fn to_json(&self, action: Action) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let names = r.stratum.parameter_names();
                let symmetry: Vec<Vec<&str>> = r
                    .symmetry
                    .orbits
                    .iter()
                    .map(|o| o.iter().map(|&i| names[i].as_str()).collect())
                    .collect();
                let mut row = json!({
                    "label": r.label,
                    "stratum": {"n": r.stratum.n(), "parts": r.stratum.parts()},
                    "parameters": names,
                    "template": r.template.to_json(),
                    "symmetry": symmetry,
                    "warnings": r.warnings,
                });
                let obj = row.as_object_mut().unwrap();
                match action {
                    Action::Conjugation => {
                        obj.insert(
                            "parameterization".into(),
                            json!(r.conjugation_parameterization),
                        );
                        obj.insert("count".into(), json!(r.conjugation_count));
                    }
                    Action::ProjectiveGeneric => {
                        obj.insert(
                            "parameterization".into(),
                            json!(r.projective_parameterization),
                        );
                        obj.insert("generic_count".into(), json!(r.projective_generic));
                        obj.insert("zero_point_count".into(), json!(r.projective_at_zero));
                        obj.insert(
                            "zero_point_combined_codim".into(),
                            json!(r.combined_codim_at_zero),
                        );
                    }
                }
                row
            })
            .collect();
        json!({
            "n": self.n,
            "action": match action {
                Action::Conjugation => "conjugation",
                Action::ProjectiveGeneric => "projective",
            },
            "strata": rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arnold::centralizer_dim;

    fn s(parts: &[usize]) -> Stratum {
        Stratum::from_parts(parts).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn jt(spec: &[(i64, &[usize])]) -> JordanType {
        JordanType::from_int_blocks(spec).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let two = enumerate_strata(2).unwrap();
        assert_eq!(two, vec![s(&[2]), s(&[1, 1])]);
        assert_eq!(enumerate_strata(4).unwrap().len(), 5);
        assert_eq!(enumerate_strata(10).unwrap().len(), 42);
        assert!(enumerate_strata(0).is_err());
    }

    #[test]
    fn template_shapes() {
        let t = template(&s(&[2, 1]));
        assert_eq!(
            t.to_json(),
            json!([["p", "1", "0"], ["0", "q", "0"], ["0", "0", "p"]])
        );
        let t = template(&s(&[1, 1, 1, 1]));
        assert_eq!(
            t.to_json(),
            json!([
                ["p", "1", "0", "0"],
                ["0", "q", "1", "0"],
                ["0", "0", "r", "1"],
                ["0", "0", "0", "s"]
            ])
        );
        let t = template(&s(&[3]));
        assert_eq!(
            t.to_json(),
            json!([["p", "0", "0"], ["0", "p", "0"], ["0", "0", "p"]])
        );
    }

    #[test]
    fn factor_counts() {
        let st = s(&[3, 2, 2, 1]);
        let factors = st.factors();
        assert_eq!(factors.len(), 3);
        for (i, &m) in st.parts().parts().iter().enumerate() {
            assert_eq!(factors.iter().filter(|f| f.contains(&i)).count(), m);
        }
    }

    #[test]
    fn template_type_examples() {
        assert_eq!(
            template_jordan_type(&s(&[1, 1]), &ints(&[1, 1])).unwrap(),
            jt(&[(1, &[2])])
        );
        // p = q = 5 (parts 2 and 1 share a value), r = 7.
        assert_eq!(
            template_jordan_type(&s(&[2, 1, 1]), &ints(&[5, 5, 7])).unwrap(),
            jt(&[(5, &[2, 1]), (7, &[1])])
        );
        let inst = template(&s(&[2, 1, 1]))
            .instantiate(&ints(&[5, 5, 7]))
            .unwrap();
        assert_eq!(jordan_type(&inst).unwrap(), jt(&[(5, &[2, 1]), (7, &[1])]));
        assert_eq!(
            template_jordan_type(&s(&[4]), &ints(&[3])).unwrap(),
            jt(&[(3, &[1, 1, 1, 1])])
        );
        assert_eq!(
            template_jordan_type(&s(&[2, 1]), &ints(&[1])),
            Err(Error::UnassignedParameter { index: 1 })
        );
    }

    #[test]
    fn template_type_matches_instantiation() {
        let pool = ints(&[0, 1, 2, 3, 4, 5]);
        for n in 1..=5 {
            for st in enumerate_strata(n).unwrap() {
                for pattern in collision_patterns(st.param_len()) {
                    let values: Vec<Rational> = pattern.iter().map(|&c| pool[c].clone()).collect();
                    let m = template(&st).instantiate(&values).unwrap();
                    assert_eq!(
                        jordan_type(&m).unwrap(),
                        template_jordan_type(&st, &values).unwrap(),
                        "{st} {pattern:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify(&QMatrix::diagonal(&ints(&[1, 1]))).unwrap();
        assert_eq!(c.stratum, s(&[2]));
        assert_eq!(c.assignment, ints(&[1]));

        let c = classify(&QMatrix::diagonal(&ints(&[2, 2, 2, 5]))).unwrap();
        assert_eq!(c.stratum, s(&[3, 1]));
        assert_eq!(c.assignment, ints(&[2, 5]));

        let c = classify(&QMatrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(c.stratum, s(&[1, 1]));
        assert_eq!(c.assignment, ints(&[1, 1]));

        assert!(matches!(
            classify(&QMatrix::from_i64(&[&[0, 1], &[-1, 0]])),
            Err(Error::IrrationalSpectrum { .. })
        ));
    }

    #[test]
    fn classify_orders_equal_parts_by_value() {
        let c = classify(&QMatrix::diagonal(&ints(&[9, 3, 3, 3, 1]))).unwrap();
        assert_eq!(c.stratum, s(&[3, 1, 1]));
        assert_eq!(c.assignment, ints(&[3, 1, 9]));
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(symmetry(&s(&[1, 1, 1, 1])).orbits, vec![vec![0, 1, 2, 3]]);
        assert_eq!(symmetry(&s(&[2, 1, 1])).orbits, vec![vec![1, 2]]);
        assert!(symmetry(&s(&[3, 1])).is_trivial());
        assert_eq!(
            parameterization_label(&s(&[2, 1, 1]), Action::ProjectiveGeneric),
            "CP^2/Σ2"
        );
        assert_eq!(
            parameterization_label(&s(&[3, 1]), Action::Conjugation),
            "C^2"
        );
    }

    #[test]
    fn param_count_examples() {
        assert_eq!(stratum_param_count(&s(&[2, 1]), Action::Conjugation), 5);
        assert_eq!(stratum_param_count(&s(&[3]), Action::Conjugation), 9);
        assert_eq!(
            stratum_param_count(&s(&[2, 2]), Action::ProjectiveGeneric),
            7
        );
    }

    #[test]
    fn generic_type_count_matches_kernel() {
        for st in enumerate_strata(4).unwrap() {
            let values: Vec<Rational> = (1..=st.param_len() as i64).map(int).collect();
            let m = template(&st).instantiate(&values).unwrap();
            assert_eq!(centralizer_dim(&m).unwrap(), st.conjugation_count());
            assert_eq!(
                arnold_count(&generic_jordan_type(&st)),
                st.conjugation_count()
            );
        }
    }

    #[test]
    fn jump_examples() {
        assert!(jump_exists(&jt(&[(1, &[1, 1])]), &jt(&[(1, &[2])])).unwrap());
        let back = jump_analysis(&jt(&[(1, &[2])]), &jt(&[(1, &[1, 1])])).unwrap();
        assert!(!back.exists);
        assert!(back
            .reason
            .to_string()
            .starts_with("dominance fails at k=1"));
        let v = jump_analysis(&jt(&[(1, &[1]), (2, &[1])]), &jt(&[(1, &[2])])).unwrap();
        assert_eq!(v.reason, JumpReason::CharPolyDiffers);
        assert!(!jump_exists(&jt(&[(1, &[2])]), &jt(&[(1, &[2])])).unwrap());
        assert_eq!(
            jump_exists(&jt(&[(1, &[2])]), &jt(&[(1, &[1])])),
            Err(Error::SizeMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn collision_pattern_counts_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (k, &b) in bell.iter().enumerate() {
            assert_eq!(collision_patterns(k).len(), b);
        }
    }

    #[test]
    fn adjacency_examples() {
        let two = stratum_adjacency(2, &ints(&[0, 1])).unwrap();
        assert_eq!(two, vec![(s(&[2]), s(&[1, 1]))]);
        let three = stratum_adjacency(3, &ints(&[0, 1, 2])).unwrap();
        assert!(three.contains(&(s(&[3]), s(&[2, 1]))));
        assert!(three.contains(&(s(&[2, 1]), s(&[1, 1, 1]))));
        assert!(!three.contains(&(s(&[1, 1, 1]), s(&[3]))));
        assert!(stratum_adjacency(3, &ints(&[0, 1])).is_err());
        let closure = transitive_closure(&three);
        assert!(closure.contains(&(s(&[3]), s(&[1, 1, 1]))));
    }

    #[test]
    fn table_gl2() {
        let t = published_tables(2).unwrap();
        let rows: Vec<(String, usize, usize, usize)> = t
            .rows
            .iter()
            .map(|r| {
                (
                    r.label.clone(),
                    r.conjugation_count,
                    r.projective_generic,
                    r.projective_at_zero,
                )
            })
            .collect();
        assert_eq!(rows, vec![("B".into(), 4, 3, 3), ("A".into(), 2, 1, 2)]);
        assert_eq!(t.rows[0].warnings.len(), 1);
        assert!(t.rows[1].warnings.is_empty());
        assert!(published_tables(5).is_err());
    }
}
