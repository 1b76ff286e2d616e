//! Complex character tables via the class-matrix method.
//!
//! The class sums `K_j` of a group span the centre of its group algebra and
//! satisfy `K_j K_k = Σ_l a_{jkl} K_l` with non-negative integer structure
//! constants. Each irreducible character `χ` gives a common eigenvector
//! `ω_l = n_l χ(z_l) / χ(1)` of the matrices `(M_j)_{kl} = a_{jkl}`. A random
//! real combination of the `M_j` has simple spectrum with overwhelming
//! probability, so its eigenvectors are exactly the `ω` vectors; the degree
//! follows from the norm `Σ_l |ω_l|² / n_l = |G| / χ(1)²`.

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{ConjugacyClasses, FiniteGroup, Subgroup};

pub type C64 = Complex<f64>;

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 0x5eed_c1a5;

/// Retries with fresh coefficients before giving up.
pub const MAX_RETRIES: usize = 16;

/// Eigenvalues closer than this trigger a retry.
pub const CLUSTER_TOLERANCE: f64 = 1e-8;

/// Tolerance on both orthogonality relations.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-9;

/// Tolerance for snapping float-mediated quantities to integers.
pub const SNAP_TOLERANCE: f64 = 1e-6;

const VALUE_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    pub degree: usize,
    /// One value per class, in class order.
    pub values: Vec<C64>,
}

impl Irrep {
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im.abs() < SNAP_TOLERANCE)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    group_order: usize,
    class_sizes: Vec<usize>,
    representatives: Vec<usize>,
    identity_class: usize,
    irreps: Vec<Irrep>,
}

/// Rounds `x` to the nearest integer, failing if it is further than `SNAP_TOLERANCE`.
pub fn snap_integer(x: f64) -> std::result::Result<i64, f64> {
    let r = x.round();
    let residual = (x - r).abs();
    if residual < SNAP_TOLERANCE {
        Ok(r as i64)
    } else {
        Err(residual)
    }
}

fn snap_component(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < VALUE_SNAP {
        r
    } else {
        x
    }
}

/// Integer structure constants `a[(j*r + k)*r + l]` of the class algebra.
fn structure_constants(group: &FiniteGroup, classes: &ConjugacyClasses) -> Vec<u64> {
    let r = classes.len();
    let mut a = vec![0u64; r * r * r];
    for (l, class) in classes.iter().enumerate() {
        let z = class.representative;
        for x in group.elements() {
            let j = classes.class_of(x);
            let k = classes.class_of(group.mul(group.inv(x), z));
            a[(j * r + k) * r + l] += 1;
        }
    }
    a
}

impl CharacterTable {
    /// Computes the table with the default seed.
    pub fn compute(group: &FiniteGroup, classes: &ConjugacyClasses) -> Result<Self> {
        character_table(group, classes, DEFAULT_SEED)
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn irrep(&self, i: usize) -> &Irrep {
        &self.irreps[i]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.irreps.iter().map(|i| i.degree).collect()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    #[inline]
    pub fn value(&self, irrep: usize, class: usize) -> C64 {
        self.irreps[irrep].values[class]
    }

    /// Index of the trivial character.
    pub fn trivial(&self) -> usize {
        self.irreps
            .iter()
            .position(|ir| {
                ir.degree == 1
                    && ir
                        .values
                        .iter()
                        .all(|v| (v - C64::new(1.0, 0.0)).norm() < SNAP_TOLERANCE)
            })
            .unwrap_or(0)
    }

    /// Index of the conjugate irrep `ā`, matched on conjugated values.
    pub fn conjugate(&self, a: usize) -> Result<usize> {
        let target: Vec<C64> = self.irreps[a].values.iter().map(|v| v.conj()).collect();
        let mut hits = self.irreps.iter().enumerate().filter(|(_, ir)| {
            ir.values
                .iter()
                .zip(&target)
                .all(|(x, y)| (x - y).norm() < SNAP_TOLERANCE)
        });
        match (hits.next(), hits.next()) {
            (Some((i, _)), None) => Ok(i),
            _ => Err(Error::NoConjugate(a)),
        }
    }

    /// Max deviation of `(1/|G|) Σ_C n_C χ_i(C) χ̄_j(C)` from `δ_ij`.
    pub fn row_orthogonality_residual(&self) -> f64 {
        let n = self.group_order as f64;
        let mut worst = 0.0f64;
        for (i, a) in self.irreps.iter().enumerate() {
            for (j, b) in self.irreps.iter().enumerate() {
                let s: C64 = a
                    .values
                    .iter()
                    .zip(&b.values)
                    .zip(&self.class_sizes)
                    .map(|((x, y), &h)| x * y.conj() * h as f64)
                    .sum::<C64>()
                    / n;
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - C64::new(expect, 0.0)).norm());
            }
        }
        worst
    }

    /// Max deviation of `Σ_i χ_i(C) χ̄_i(C')` from `δ_{CC'} |G|/n_C`.
    pub fn column_orthogonality_residual(&self) -> f64 {
        let r = self.class_sizes.len();
        let mut worst = 0.0f64;
        for c in 0..r {
            for d in 0..r {
                let s: C64 = self.irreps.iter().map(|ir| ir.values[c] * ir.values[d].conj()).sum();
                let expect = if c == d {
                    self.group_order as f64 / self.class_sizes[c] as f64
                } else {
                    0.0
                };
                worst = worst.max((s - C64::new(expect, 0.0)).norm());
            }
        }
        worst
    }

    /// Checks every table invariant.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let r = self.class_sizes.len();
        if self.irreps.len() != r {
            return Err(format!("{} irreps for {r} classes", self.irreps.len()));
        }
        let sum_sq: usize = self.irreps.iter().map(|i| i.degree * i.degree).sum();
        if sum_sq != self.group_order {
            return Err(format!("sum of squared degrees {sum_sq} != {}", self.group_order));
        }
        for (i, ir) in self.irreps.iter().enumerate() {
            if ir.values[self.identity_class] != C64::new(ir.degree as f64, 0.0) {
                return Err(format!("irrep {i}: value at identity differs from degree"));
            }
            if ir
                .values
                .iter()
                .any(|v| v.norm() > ir.degree as f64 + ORTHOGONALITY_TOLERANCE)
            {
                return Err(format!("irrep {i}: |χ| exceeds the degree"));
            }
        }
        let row = self.row_orthogonality_residual();
        if row >= ORTHOGONALITY_TOLERANCE {
            return Err(format!("row orthogonality residual {row:e}"));
        }
        let col = self.column_orthogonality_residual();
        if col >= ORTHOGONALITY_TOLERANCE {
            return Err(format!("column orthogonality residual {col:e}"));
        }
        Ok(())
    }

    /// A copy with one value shifted by `delta`, bypassing validation.
    /// Only meant for fault-injection tests of downstream checks.
    pub fn perturbed(&self, irrep: usize, class: usize, delta: C64) -> Self {
        let mut t = self.clone();
        t.irreps[irrep].values[class] += delta;
        t
    }

    /// Values of irrep `i` on every element, via the element-to-class map.
    pub fn element_values(&self, i: usize, classes: &ConjugacyClasses, order: usize) -> Vec<C64> {
        (0..order).map(|x| self.irreps[i].values[classes.class_of(x)]).collect()
    }
}

/// Burnside's class-matrix construction, deterministic for a fixed `seed`.
pub fn character_table(group: &FiniteGroup, classes: &ConjugacyClasses, seed: u64) -> Result<CharacterTable> {
    let r = classes.len();
    let n = group.order();
    let sizes = classes.sizes();
    let identity = classes.identity_class();
    let a = structure_constants(group, classes);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..=MAX_RETRIES {
        let coeffs: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if let Some(vectors) = try_diagonalize(&a, r, identity, &coeffs) {
            if let Some(table) = assemble(n, &sizes, classes, identity, vectors) {
                return Ok(table);
            }
        }
    }
    Err(Error::DegenerateSpectrum { retries: MAX_RETRIES })
}

/// Returns the `ω` eigenvectors normalized to `ω_identity = 1`, or `None` on
/// clustering or an eigenvector that fails to diagonalize every class matrix.
fn try_diagonalize(a: &[u64], r: usize, identity: usize, coeffs: &[f64]) -> Option<Vec<Vec<C64>>> {
    let at = |j: usize, k: usize, l: usize| a[(j * r + k) * r + l] as f64;
    let m = DMatrix::<f64>::from_fn(r, r, |k, l| (0..r).map(|j| coeffs[j] * at(j, k, l)).sum());
    let eig = m.clone().complex_eigenvalues();
    let scale = 1.0f64.max(eig.iter().map(|z| z.norm()).fold(0.0, f64::max));
    for i in 0..r {
        for j in i + 1..r {
            if (eig[i] - eig[j]).norm() < CLUSTER_TOLERANCE * scale {
                return None;
            }
        }
    }
    let mc: DMatrix<C64> = m.map(|x| C64::new(x, 0.0));
    let mut out = Vec::with_capacity(r);
    for &lambda in eig.iter() {
        let v = inverse_iteration(&mc, lambda, scale)?;
        let pivot = v[identity];
        if pivot.norm() < 1e-12 {
            return None;
        }
        let v: Vec<C64> = v.iter().map(|x| x / pivot).collect();
        // every class matrix must act diagonally: (M_j ω)_k = ω_j ω_k
        for j in 0..r {
            for k in 0..r {
                let lhs: C64 = (0..r).map(|l| v[l] * at(j, k, l)).sum();
                let rhs = v[j] * v[k];
                if (lhs - rhs).norm() > 1e-7 * (1.0 + rhs.norm()) {
                    return None;
                }
            }
        }
        out.push(v);
    }
    Some(out)
}

fn inverse_iteration(m: &DMatrix<C64>, lambda: C64, scale: f64) -> Option<DVector<C64>> {
    let r = m.nrows();
    let shift = lambda + C64::new(1e-10 * scale, 1e-10 * scale);
    let shifted = m - DMatrix::<C64>::identity(r, r) * shift;
    let lu = shifted.lu();
    let mut v = DVector::<C64>::from_element(r, C64::new(1.0, 0.0));
    for _ in 0..3 {
        let w = lu.solve(&v)?;
        let norm = w.norm();
        if !norm.is_finite() || norm == 0.0 {
            return None;
        }
        v = w / C64::new(norm, 0.0);
    }
    Some(v)
}

fn assemble(
    order: usize,
    sizes: &[usize],
    classes: &ConjugacyClasses,
    identity: usize,
    vectors: Vec<Vec<C64>>,
) -> Option<CharacterTable> {
    let mut irreps = Vec::with_capacity(vectors.len());
    for w in vectors {
        let norm: f64 = w.iter().zip(sizes).map(|(x, &h)| x.norm_sqr() / h as f64).sum();
        let deg_sq = order as f64 / norm;
        let degree = deg_sq.sqrt().round();
        if degree < 1.0 || (degree * degree - deg_sq).abs() > 1e-6 * deg_sq.max(1.0) {
            return None;
        }
        let values: Vec<C64> = w
            .iter()
            .zip(sizes)
            .enumerate()
            .map(|(c, (x, &h))| {
                if c == identity {
                    C64::new(degree, 0.0)
                } else {
                    let v = x * degree / h as f64;
                    C64::new(snap_component(v.re), snap_component(v.im))
                }
            })
            .collect();
        irreps.push(Irrep {
            degree: degree as usize,
            values,
        });
    }
    irreps.sort_by_key(canonical_key);
    let table = CharacterTable {
        group_order: order,
        class_sizes: sizes.to_vec(),
        representatives: classes.iter().map(|c| c.representative).collect(),
        identity_class: identity,
        irreps,
    };
    table.validate().ok().map(|_| table)
}

/// Degree ascending, real characters first, then values descending on a 1e-6 grid.
/// The trivial character is therefore always first.
fn canonical_key(ir: &Irrep) -> (usize, bool, std::cmp::Reverse<Vec<(i64, i64)>>) {
    let grid: Vec<(i64, i64)> = ir
        .values
        .iter()
        .map(|v| ((v.re * 1e6).round() as i64, (v.im * 1e6).round() as i64))
        .collect();
    (ir.degree, !ir.is_real(), std::cmp::Reverse(grid))
}

/// Decomposes the restriction of a parent character (given per parent class)
/// to `sub` into irreps of `sub`.
pub fn restrict_and_decompose(
    parent_values: &[C64],
    parent_classes: &ConjugacyClasses,
    sub: &Subgroup,
    sub_classes: &ConjugacyClasses,
    sub_table: &CharacterTable,
) -> Result<Vec<usize>> {
    let order = sub.order() as f64;
    sub_table
        .irreps()
        .iter()
        .map(|psi| {
            let ip: C64 = sub_classes
                .iter()
                .map(|c| {
                    let chi = parent_values[parent_classes.class_of(sub.embed(c.representative))];
                    chi * psi.values[c.id].conj() * c.size as f64
                })
                .sum::<C64>()
                / order;
            let residual = ip.im.abs();
            match snap_integer(ip.re) {
                Ok(m) if m >= 0 && residual < SNAP_TOLERANCE => Ok(m as usize),
                Ok(_) | Err(_) => Err(Error::NonIntegerMultiplicity {
                    value: ip.re,
                    residual: residual.max((ip.re - ip.re.round()).abs()),
                }),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, ZOO};
    use crate::group::{conjugacy_classes, DEFAULT_ELEMENT_CAP};

    fn table(name: &str) -> (FiniteGroup, ConjugacyClasses, CharacterTable) {
        let g = builtin(name, DEFAULT_ELEMENT_CAP).unwrap();
        let c = conjugacy_classes(&g);
        let t = CharacterTable::compute(&g, &c).unwrap();
        (g, c, t)
    }

    fn re(t: &CharacterTable) -> Vec<Vec<f64>> {
        t.irreps()
            .iter()
            .map(|i| i.values.iter().map(|v| v.re).collect())
            .collect()
    }

    #[test]
    fn z2_table() {
        let (_, _, t) = table("Z2");
        assert_eq!(re(&t), vec![vec![1.0, 1.0], vec![1.0, -1.0]]);
    }

    #[test]
    fn s3_table() {
        let (_, _, t) = table("S3");
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        assert_eq!(
            re(&t),
            vec![vec![1.0, 1.0, 1.0], vec![1.0, 1.0, -1.0], vec![2.0, -1.0, 0.0]]
        );
    }

    #[test]
    fn q8_degrees() {
        let (_, _, t) = table("Q8");
        assert_eq!(t.degrees(), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn z3_has_conjugate_pair() {
        let (_, _, t) = table("Z3");
        assert_eq!(t.conjugate(0).unwrap(), 0);
        assert_eq!(t.conjugate(1).unwrap(), 2);
        assert_eq!(t.conjugate(2).unwrap(), 1);
        let w = t.value(1, 1);
        assert!((w - C64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-12);
    }

    #[test]
    fn a5_has_golden_ratio_entries() {
        let (_, _, t) = table("A5");
        assert_eq!(t.degrees(), vec![1, 3, 3, 4, 5]);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let found = t
            .irreps()
            .iter()
            .flat_map(|i| i.values.iter())
            .any(|v| (v.re - phi).abs() < 1e-12);
        assert!(found);
    }

    #[test]
    fn zoo_tables_are_valid() {
        for name in ZOO {
            let (g, _, t) = table(name);
            t.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(t.trivial(), 0, "{name}");
            assert_eq!(t.degrees().iter().map(|d| d * d).sum::<usize>(), g.order());
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let g = builtin("S4", DEFAULT_ELEMENT_CAP).unwrap();
        let c = conjugacy_classes(&g);
        let a = character_table(&g, &c, 1).unwrap();
        let b = character_table(&g, &c, 1).unwrap();
        let other = character_table(&g, &c, 99).unwrap();
        assert_eq!(a, b);
        // canonical ordering makes the result seed-independent up to float noise
        for (x, y) in a.irreps().iter().zip(other.irreps()) {
            for (u, v) in x.values.iter().zip(&y.values) {
                assert!((u - v).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn conjugation_character_counts_classes() {
        // the permutation character of G acting on itself by conjugation is
        // |E(g)|; its trivial multiplicity is the number of classes
        for name in ZOO {
            let (_, c, t) = table(name);
            let pi: Vec<C64> = c.iter().map(|k| C64::new(k.centralizer_order() as f64, 0.0)).collect();
            let trivial = t.trivial();
            let m: C64 = c
                .iter()
                .map(|k| pi[k.id] * t.value(trivial, k.id).conj() * k.size as f64)
                .sum::<C64>()
                / t.group_order() as f64;
            assert_eq!(snap_integer(m.re), Ok(c.len() as i64), "{name}");
        }
    }

    #[test]
    fn restriction_examples() {
        let (g, c, t) = table("S3");
        let r = g.element_by_name("r").unwrap();
        let sub = g.centralizer(r);
        let sc = conjugacy_classes(sub.group());
        let st = CharacterTable::compute(sub.group(), &sc).unwrap();
        let trivial = restrict_and_decompose(&t.irrep(0).values, &c, &sub, &sc, &st).unwrap();
        assert_eq!(trivial, vec![1, 0, 0]);
        let e = restrict_and_decompose(&t.irrep(2).values, &c, &sub, &sc, &st).unwrap();
        assert_eq!(e, vec![0, 1, 1]);

        let triv_sub = crate::group::Subgroup::from_members(&g, vec![g.identity()]);
        let tc = conjugacy_classes(triv_sub.group());
        let tt = CharacterTable::compute(triv_sub.group(), &tc).unwrap();
        let m = restrict_and_decompose(&t.irrep(2).values, &c, &triv_sub, &tc, &tt).unwrap();
        assert_eq!(m, vec![2]);
    }

    #[test]
    fn corrupt_table_fails_restriction() {
        let (g, c, t) = table("S3");
        let bad = t.perturbed(2, 1, C64::new(0.3, 0.0));
        let sub = g.centralizer(g.element_by_name("r").unwrap());
        let sc = conjugacy_classes(sub.group());
        let st = CharacterTable::compute(sub.group(), &sc).unwrap();
        let err = restrict_and_decompose(&bad.irrep(2).values, &c, &sub, &sc, &st).unwrap_err();
        assert!(matches!(err, Error::NonIntegerMultiplicity { .. }));
        assert!(bad.validate().is_err());
    }
}
