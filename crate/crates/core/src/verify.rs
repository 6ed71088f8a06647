//! Invariant sweeps run by `versal verify`.
//!
//! Each suite enumerates a finite family of inputs (or a seeded random
//! sample), checks one property exactly and records up to
//! [`MAX_COUNTEREXAMPLES`] failures.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arnold::{
    ad_matrix, arnold_count, centralizer_dim, combined_orbit_codim, is_transversal,
    miniversal_greedy, miniversal_structured, DeformationFamily,
};
use crate::error::Result;
use crate::exactq::{char_poly, int, kernel_basis, rank, rational_roots, QMatrix, Rational};
use crate::jordan::{
    enumerate_jordan_types, jordan_matrix, jordan_type, rank_sequence, JordanType,
};
use crate::partition::{dominates, partitions, Partition};
use crate::strata::{
    classify, classify_type, collision_patterns, enumerate_strata, jump_exists, published_tables,
    stratum_adjacency, template, template_jordan_type, Action, Stratum,
};

pub const MAX_COUNTEREXAMPLES: usize = 5;
const SEED: u64 = 0x0005_eed0_fa11;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_COUNTEREXAMPLES {
            self.failures.push(describe());
        }
    }

    fn check_result(&mut self, r: Result<bool>, describe: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, describe),
            Err(e) => self.check(false, || format!("{}: error {e}", describe())),
        }
    }

    /// Merges `(ok, description)` results computed in parallel.
    fn absorb(&mut self, results: Vec<(bool, String)>) {
        for (ok, what) in results {
            self.check(ok, || what);
        }
    }

    fn finish(self) -> SuiteOutcome {
        SuiteOutcome {
            name: self.name,
            checked: self.checked,
            failures: self.failures,
        }
    }
}

fn pool(k: i64) -> Vec<Rational> {
    (0..k).map(int).collect()
}

fn all_types(max_n: usize) -> Vec<JordanType> {
    (1..=max_n)
        .flat_map(|n| enumerate_jordan_types(n, &pool(5)))
        .collect()
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| {
        let num: i64 = rng.gen_range(-4..=4);
        let den: i64 = rng.gen_range(1..=3);
        Rational::new(num.into(), den.into())
    })
}

/// Random invertible matrix with small integer entries.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> QMatrix {
    loop {
        let p = QMatrix::from_fn(n, n, |_, _| int(rng.gen_range(-2..=2)));
        if rank(&p) == n {
            return p;
        }
    }
}

/// `P⁻¹ J P` for a random Jordan type over `{0..4}` of size `n`, returned with its type.
fn random_conjugate(rng: &mut impl Rng, types: &[JordanType]) -> (JordanType, QMatrix) {
    let jt = types[rng.gen_range(0..types.len())].clone();
    let j = jordan_matrix(&jt).expect("concrete type");
    let p = random_invertible(rng, jt.n());
    let m = j.conjugate_by(&p).expect("square").expect("invertible");
    (jt, m)
}

/// Number of partitions of `n` by Euler's pentagonal-number recurrence.
pub fn partition_count_recurrence(n: usize) -> u64 {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total = 0i64;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[m - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                total += sign * p[m - g2];
            }
        }
        p[m] = total;
    }
    p[n] as u64
}

fn rank_nullity(max_n: usize) -> SuiteOutcome {
    let mut t = Tally::new("rank + nullity = columns");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..60 {
        let rows = rng.gen_range(1..=max_n.max(1) + 1);
        let cols = rng.gen_range(1..=max_n.max(1) + 1);
        let mut m = random_matrix(&mut rng, rows, cols);
        if rng.gen_bool(0.5) && rows > 1 {
            // force a dependent row
            for c in 0..cols {
                m[(rows - 1, c)] = m[(0, c)].clone() * int(2);
            }
        }
        let r = rank(&m);
        let k = kernel_basis(&m).len();
        t.check(r + k == cols, || {
            format!("{m}rank {r} + nullity {k} != {cols}")
        });
    }
    t.finish()
}

fn char_poly_similarity(max_n: usize) -> SuiteOutcome {
    let mut t = Tally::new("char_poly is a similarity invariant");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for _ in 0..40 {
        let n = rng.gen_range(1..=max_n.clamp(1, 4));
        let m = random_matrix(&mut rng, n, n);
        let p = random_invertible(&mut rng, n);
        let c = m.conjugate_by(&p).unwrap().unwrap();
        t.check(char_poly(&m).unwrap() == char_poly(&c).unwrap(), || {
            format!("{m}conjugated by\n{p}")
        });
    }
    t.finish()
}

fn root_soundness(max_n: usize) -> SuiteOutcome {
    let mut t = Tally::new("rational roots vanish with exact multiplicity");
    for jt in all_types(max_n.min(4)) {
        let poly = char_poly(&jordan_matrix(&jt).unwrap()).unwrap();
        let roots = rational_roots(&poly);
        t.check(roots.splits(), || format!("{jt}: does not split"));
        for (r, m) in &roots.roots {
            let mut q = poly.clone();
            let mut ok = true;
            for _ in 0..*m {
                let (next, rem) = q.div_linear(r);
                ok &= rem.is_zero();
                q = next;
            }
            ok &= !q.eval(r).is_zero();
            t.check(ok, || format!("{jt}: root {r} multiplicity {m} wrong"));
        }
    }
    t.finish()
}

fn jordan_round_trip(max_n: usize) -> SuiteOutcome {
    let mut t = Tally::new("jordan_type(jordan_matrix(jt)) = jt");
    let results = all_types(max_n.min(5))
        .into_par_iter()
        .map(|jt| {
            let back = jordan_type(&jordan_matrix(&jt).unwrap());
            (back.as_ref() == Ok(&jt), format!("{jt} -> {back:?}"))
        })
        .collect();
    t.absorb(results);
    t.finish()
}

fn jordan_conjugation(max_n: usize) -> SuiteOutcome {
    let mut t = Tally::new("Jordan type and centralizer are conjugation invariants");
    let types = all_types(max_n.min(4));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for _ in 0..60 {
        let (jt, m) = random_conjugate(&mut rng, &types);
        let got = jordan_type(&m);
        t.check(got.as_ref() == Ok(&jt), || {
            format!("{jt}: conjugate gave {got:?}\n{m}")
        });
        let c = centralizer_dim(&m).unwrap();
        t.check(c == arnold_count(&jt), || {
            format!("{jt}: conjugate centralizer {c}")
        });
        let ranks_ok = jt.spectrum().iter().all(|(v, p)| {
            let ranks = rank_sequence(&m, v.value().unwrap()).unwrap();
            let total: usize = ranks.windows(2).map(|w| w[0] - w[1]).sum();
            total == p.weight()
        });
        t.check(ranks_ok, || {
            format!("{jt}: rank sequence total differs from multiplicity")
        });
    }
    t.finish()
}

fn partition_orders() -> SuiteOutcome {
    let mut t = Tally::new("conjugation is an involution; dominance is a partial order (n ≤ 8)");
    for n in 1..=8 {
        let all = partitions(n);
        for a in &all {
            t.check(
                a.conjugate().conjugate() == *a && a.conjugate().weight() == n,
                || format!("conjugate of {a}"),
            );
            t.check(dominates(a, a).unwrap(), || format!("{a} not reflexive"));
            for b in &all {
                let ab = dominates(a, b).unwrap();
                let ba = dominates(b, a).unwrap();
                t.check(!(ab && ba) || a == b, || {
                    format!("{a} and {b} antisymmetry")
                });
                if ab {
                    for c in &all {
                        if dominates(b, c).unwrap() {
                            t.check(dominates(a, c).unwrap(), || {
                                format!("{a} ≥ {b} ≥ {c} not transitive")
                            });
                        }
                    }
                }
            }
        }
    }
    t.finish()
}

fn formula_oracle(max_n: usize) -> SuiteOutcome {
    let mut t = Tally::new("block formula = commutator kernel dimension");
    let results = all_types(max_n.min(5))
        .into_par_iter()
        .map(|jt| {
            let a = jordan_matrix(&jt).unwrap();
            let oracle = centralizer_dim(&a).unwrap();
            let n = jt.n();
            let full = rank(&ad_matrix(&a).unwrap()) + oracle == n * n;
            (
                oracle == arnold_count(&jt) && full,
                format!("{jt}: formula {} vs kernel {oracle}", arnold_count(&jt)),
            )
        })
        .collect();
    t.absorb(results);
    t.finish()
}

fn greedy_transversal(max_n: usize) -> SuiteOutcome {
    let mut t = Tally::new("greedy family is transversal with centralizer_dim directions");
    let results = all_types(max_n.min(5))
        .into_par_iter()
        .map(|jt| {
            let a = jordan_matrix(&jt).unwrap();
            let f = miniversal_greedy(&a).unwrap();
            let ok = f.len() == arnold_count(&jt) && is_transversal(&f).unwrap();
            (ok, format!("{jt}: {} directions", f.len()))
        })
        .collect();
    t.absorb(results);
    t.finish()
}

fn structured_transversal(max_n: usize) -> SuiteOutcome {
    let mut t = Tally::new("structured family passes the transversality gate");
    let results = all_types(max_n.min(5))
        .into_par_iter()
        .map(|jt| match miniversal_structured(&jt) {
            Ok((p, f)) => {
                let ok = p.len() == arnold_count(&jt) && is_transversal(&f).unwrap();
                (ok, format!("{jt}: {} stars", p.len()))
            }
            Err(e) => (false, format!("{jt}: {e}")),
        })
        .collect();
    t.absorb(results);
    t.finish()
}

/// The upper-triangular family `[[λ1, 1+λ2], [0, λ3]]` at `J2(0)` against the
/// full four-parameter family.
fn nonversal_example() -> SuiteOutcome {
    let mut t = Tally::new("upper-triangular family at J2(0) is not transversal; full family is");
    let base = QMatrix::from_i64(&[&[0, 1], &[0, 0]]);
    let u = |r, c| QMatrix::unit(2, r, c);
    let partial =
        DeformationFamily::with_default_names(base.clone(), vec![u(0, 0), u(0, 1), u(1, 1)])
            .unwrap();
    t.check_result(is_transversal(&partial).map(|b| !b), || {
        "3-parameter family reported transversal".into()
    });
    let full =
        DeformationFamily::with_default_names(base, vec![u(0, 0), u(0, 1), u(1, 0), u(1, 1)])
            .unwrap();
    t.check_result(is_transversal(&full), || {
        "4-parameter family reported not transversal".into()
    });
    t.finish()
}

fn random_type(rng: &mut impl Rng, n: usize) -> JordanType {
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); 8];
    let mut left = n;
    while left > 0 {
        let size = rng.gen_range(1..=left);
        blocks[rng.gen_range(0..8)].push(size);
        left -= size;
    }
    let spec = blocks
        .into_iter()
        .enumerate()
        .filter(|(_, b)| !b.is_empty())
        .map(|(v, b)| (int(v as i64).into(), Partition::from_unsorted(b).unwrap()))
        .collect();
    JordanType::new(spec).unwrap()
}

fn parity() -> SuiteOutcome {
    let mut t = Tally::new("miniversal count ≡ n (mod 2)");
    for n in 1..=6 {
        for jt in enumerate_jordan_types(n, &pool(n as i64)) {
            t.check(arnold_count(&jt) % 2 == n % 2, || format!("{jt}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    for n in [7, 8] {
        for _ in 0..1000 {
            let jt = random_type(&mut rng, n);
            t.check(arnold_count(&jt) % 2 == n % 2, || format!("{jt}"));
        }
    }
    for n in 1..=10 {
        for s in enumerate_strata(n).unwrap() {
            t.check(s.conjugation_count() % 2 == n % 2, || {
                format!("stratum {s}")
            });
        }
    }
    t.finish()
}

fn nilpotency(max_n: usize) -> SuiteOutcome {
    let mut t = Tally::new("combined codim = centralizer iff nilpotent, else one less");
    let check = |m: &QMatrix| -> (bool, String) {
        let c = centralizer_dim(m).unwrap();
        let k = combined_orbit_codim(m).unwrap();
        let nil = m.is_nilpotent().unwrap();
        let ok = if nil { k == c } else { k + 1 == c };
        (
            ok,
            format!("{m}nilpotent {nil}, centralizer {c}, combined {k}"),
        )
    };
    let types = all_types(max_n.min(4));
    let results = types
        .par_iter()
        .map(|jt| check(&jordan_matrix(jt).unwrap()))
        .collect();
    t.absorb(results);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    for _ in 0..100 {
        let (_, m) = random_conjugate(&mut rng, &types);
        let (ok, what) = check(&m);
        t.check(ok, || what);
    }
    t.finish()
}

fn stratum_constancy(max_n: usize) -> SuiteOutcome {
    let mut t = Tally::new("miniversal count is constant on each stratum");
    let values = pool(8);
    let strata: Vec<Stratum> = (1..=max_n.min(6))
        .flat_map(|n| enumerate_strata(n).unwrap())
        .collect();
    let results: Vec<(bool, String)> = strata
        .par_iter()
        .flat_map_iter(|s| {
            let values = &values;
            collision_patterns(s.param_len())
                .into_iter()
                .map(move |pat| {
                    let assign: Vec<Rational> = pat.iter().map(|&c| values[c].clone()).collect();
                    let jt = template_jordan_type(s, &assign).unwrap();
                    (
                        arnold_count(&jt) == s.conjugation_count(),
                        format!("{s} at {pat:?}: {jt}"),
                    )
                })
        })
        .collect();
    t.absorb(results);
    // the template formula itself is cross-checked against the instantiated matrix
    for n in 1..=max_n.min(4) {
        for s in enumerate_strata(n).unwrap() {
            for pat in collision_patterns(s.param_len()) {
                let assign: Vec<Rational> = pat.iter().map(|&c| values[c].clone()).collect();
                let m = template(&s).instantiate(&assign).unwrap();
                let direct = jordan_type(&m).unwrap();
                t.check(template_jordan_type(&s, &assign).unwrap() == direct, || {
                    format!("{s} at {pat:?}: instantiated type {direct}")
                });
            }
        }
    }
    t.finish()
}

fn classify_round_trip(max_n: usize) -> SuiteOutcome {
    let mut t = Tally::new("classification is total and round-trips");
    let results = all_types(max_n.min(5))
        .into_par_iter()
        .map(|jt| {
            let by_matrix = classify(&jordan_matrix(&jt).unwrap());
            let ok = match &by_matrix {
                Ok(c) => {
                    template_jordan_type(&c.stratum, &c.assignment).as_ref() == Ok(&jt)
                        && classify_type(&jt).as_ref() == Ok(c)
                }
                Err(_) => false,
            };
            (ok, format!("{jt}: {by_matrix:?}"))
        })
        .collect();
    t.absorb(results);
    t.finish()
}

fn jump_order(max_n: usize) -> SuiteOutcome {
    let mut t = Tally::new("jumps strictly lower the count and form a strict partial order");
    for n in 1..=max_n.min(5) {
        let types = enumerate_jordan_types(n, &pool(5));
        let rel: Vec<Vec<bool>> = types
            .par_iter()
            .map(|a| types.iter().map(|b| jump_exists(a, b).unwrap()).collect())
            .collect();
        for (i, a) in types.iter().enumerate() {
            t.check(!rel[i][i], || format!("{a} jumps to itself"));
            for (j, b) in types.iter().enumerate() {
                if !rel[i][j] {
                    continue;
                }
                t.check(arnold_count(a) > arnold_count(b), || {
                    format!("{a} -> {b} does not lower the count")
                });
                t.check(!rel[j][i], || format!("{a} <-> {b}"));
                for (k, c) in types.iter().enumerate() {
                    if rel[j][k] {
                        t.check(rel[i][k], || format!("{a} -> {b} -> {c} not transitive"));
                    }
                }
            }
        }
    }
    t.finish()
}

fn adjacency_gl2() -> SuiteOutcome {
    let mut t = Tally::new("gl(2) stratum adjacency is scalar -> regular only");
    let edges = stratum_adjacency(2, &pool(3)).unwrap();
    let expected = vec![(
        Stratum::from_parts(&[2]).unwrap(),
        Stratum::from_parts(&[1, 1]).unwrap(),
    )];
    t.check(edges == expected, || format!("{edges:?}"));
    t.finish()
}

fn strata_count() -> SuiteOutcome {
    let mut t = Tally::new("number of strata = partition function (n ≤ 10)");
    for n in 1..=10 {
        let got = enumerate_strata(n).unwrap().len() as u64;
        let want = partition_count_recurrence(n);
        t.check(got == want, || {
            format!("n = {n}: {got} strata, p(n) = {want}")
        });
    }
    t.finish()
}

/// One table row: partition, conjugation count, projective generic count,
/// projective count at the zero point.
pub type TableRow = (&'static [usize], usize, usize, usize);

/// Published values per table size.
pub const PUBLISHED_TABLES: &[(usize, &[TableRow])] = &[
    (2, &[(&[2], 4, 3, 3), (&[1, 1], 2, 1, 2)]),
    (
        3,
        &[(&[3], 9, 8, 8), (&[2, 1], 5, 4, 5), (&[1, 1, 1], 3, 2, 3)],
    ),
    (
        4,
        &[
            (&[4], 16, 15, 15),
            (&[3, 1], 10, 9, 10),
            (&[2, 2], 8, 7, 8),
            (&[2, 1, 1], 6, 5, 6),
            (&[1, 1, 1, 1], 4, 3, 4),
        ],
    ),
];

fn table_diff(max_n: usize) -> SuiteOutcome {
    let mut t = Tally::new("generated tables match the published gl(2), gl(3), gl(4) values");
    for &(n, expected) in PUBLISHED_TABLES.iter().filter(|(n, _)| *n <= max_n.max(2)) {
        let table = published_tables(n).unwrap();
        t.check(table.rows.len() == expected.len(), || {
            format!("gl({n}): row count")
        });
        for (row, &(parts, conj, generic, zero)) in table.rows.iter().zip(expected) {
            let got = (
                row.stratum.parts().parts(),
                row.conjugation_count,
                row.projective_generic,
                row.projective_at_zero,
            );
            t.check(got == (parts, conj, generic, zero), || {
                format!(
                    "gl({n}): got {got:?}, expected {:?}",
                    (parts, conj, generic, zero)
                )
            });
            t.check(
                crate::strata::stratum_param_count(&row.stratum, Action::ProjectiveGeneric)
                    == generic,
                || format!("gl({n}) {}: projective-generic count", row.stratum),
            );
        }
    }
    t.finish()
}

/// The two `gl(6)` matrices with equal counts but different strata.
pub fn gl6_examples() -> (QMatrix, QMatrix) {
    let (p, q, r, s) = (1, 2, 3, 4);
    let first = QMatrix::from_i64(&[
        &[p, 0, 0, 0, 0, 0],
        &[0, p, 0, 0, 0, 0],
        &[0, 0, p, 1, 0, 0],
        &[0, 0, 0, q, 1, 0],
        &[0, 0, 0, 0, r, 1],
        &[0, 0, 0, 0, 0, s],
    ]);
    let second = QMatrix::from_i64(&[
        &[p, 0, 0, 0, 0, 0],
        &[0, q, 0, 0, 0, 0],
        &[0, 0, r, 1, 0, 0],
        &[0, 0, 0, p, 0, 0],
        &[0, 0, 0, 0, q, 0],
        &[0, 0, 0, 0, 0, r],
    ]);
    (first, second)
}

fn gl6() -> SuiteOutcome {
    let mut t = Tally::new("gl(6): distinct strata (3,1,1,1) and (2,2,2), both with 12 parameters");
    let (a, b) = gl6_examples();
    let ca = classify(&a).unwrap();
    let cb = classify(&b).unwrap();
    t.check(ca.stratum.parts().parts() == [3, 1, 1, 1], || {
        format!("first: {}", ca.stratum)
    });
    t.check(cb.stratum.parts().parts() == [2, 2, 2], || {
        format!("second: {}", cb.stratum)
    });
    t.check(ca.stratum != cb.stratum, || "strata coincide".into());
    for (c, m) in [(&ca, &a), (&cb, &b)] {
        t.check(c.stratum.conjugation_count() == 12, || {
            format!("{} count", c.stratum)
        });
        t.check(centralizer_dim(m).unwrap() == 12, || {
            format!("{} centralizer", c.stratum)
        });
    }
    t.finish()
}

/// Runs every suite with enumeration sizes capped at `max_n`.
pub fn run_all(max_n: usize) -> Vec<SuiteOutcome> {
    let max_n = max_n.max(1);
    vec![
        rank_nullity(max_n),
        char_poly_similarity(max_n),
        root_soundness(max_n),
        jordan_round_trip(max_n),
        jordan_conjugation(max_n),
        partition_orders(),
        formula_oracle(max_n),
        greedy_transversal(max_n),
        structured_transversal(max_n),
        nonversal_example(),
        parity(),
        nilpotency(max_n),
        stratum_constancy(max_n),
        classify_round_trip(max_n),
        jump_order(max_n),
        adjacency_gl2(),
        strata_count(),
        table_diff(max_n),
        gl6(),
    ]
}
