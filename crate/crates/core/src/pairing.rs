//! Type-I pairing matrices of the quantum double.
//!
//! Two are built: the flux/point matrix on `S² × S¹`, which is the
//! normalized character table, and the torus matrix, which is the
//! Drinfeld-double anyon S-matrix. Other pairing manifolds plug in through
//! [`PairingManifold`].
//!
//! Conjugation convention: in `S_{μa}` the complex conjugate sits on the
//! point-sector character. Any consistent choice keeps the matrix unitary
//! and leaves the vacuum row and column unchanged.

use std::str::FromStr;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::chartable::C64;
use crate::double::QuantumDouble;
use crate::error::{Error, Result};
use crate::sectors::{loop_sectors, LoopSector};

/// Unitarity tolerance on `max |S†S − I|`.
pub const UNITARITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PairingMatrix {
    pub manifold: String,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: DMatrix<C64>,
    /// `√Q` of the pairing manifold.
    pub d_pair: f64,
    /// Index of the vacuum row and column.
    pub vacuum_row: usize,
    pub vacuum_col: usize,
    /// Quantum dimensions along the rows and columns.
    pub row_dims: Vec<f64>,
    pub col_dims: Vec<f64>,
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl PairingMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// `max |S†S − I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.entries.nrows();
        if n != self.entries.ncols() {
            return f64::INFINITY;
        }
        let prod = self.entries.adjoint() * &self.entries;
        max_abs(&(prod - DMatrix::<C64>::identity(n, n)))
    }

    pub fn symmetry_residual(&self) -> f64 {
        max_abs(&(&self.entries - self.entries.transpose()))
    }

    /// Distance of `S²` from the nearest 0/1 permutation matrix.
    pub fn square_permutation_residual(&self) -> f64 {
        let sq = &self.entries * &self.entries;
        let n = sq.nrows();
        let mut worst = 0.0f64;
        let mut used = vec![false; n];
        for i in 0..n {
            let (j, _) = (0..n)
                .map(|j| (j, sq[(i, j)].norm()))
                .fold((0, -1.0), |best, x| if x.1 > best.1 { x } else { best });
            if used[j] {
                return f64::INFINITY;
            }
            used[j] = true;
            for k in 0..n {
                let target = if k == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                worst = worst.max((sq[(i, k)] - target).norm());
            }
        }
        worst
    }

    /// `max_α |S_{1α} − d_α/D_pair|` over the vacuum row.
    pub fn vacuum_row_residual(&self) -> f64 {
        (0..self.entries.ncols())
            .map(|j| (self.entries[(self.vacuum_row, j)] - C64::new(self.col_dims[j] / self.d_pair, 0.0)).norm())
            .fold(0.0, f64::max)
    }

    /// `max_a |S_{a1} − d_a/D_pair|` over the vacuum column.
    pub fn vacuum_col_residual(&self) -> f64 {
        (0..self.entries.nrows())
            .map(|i| (self.entries[(i, self.vacuum_col)] - C64::new(self.row_dims[i] / self.d_pair, 0.0)).norm())
            .fold(0.0, f64::max)
    }

    fn checked(self) -> Result<Self> {
        let residual = self.unitarity_residual();
        if residual < UNITARITY_TOLERANCE {
            Ok(self)
        } else {
            Err(Error::UnitarityViolation { residual })
        }
    }
}

/// Rows are flux sectors `μ`, columns point sectors `a`:
/// `S_{μa} = √(n_μ/|G|) · χ̄_a(μ)`.
pub fn pairing_matrix_s2s1(qd: &QuantumDouble) -> Result<PairingMatrix> {
    let table = qd.table();
    let classes = qd.classes();
    let n = qd.order() as f64;
    let entries = DMatrix::from_fn(classes.len(), table.len(), |mu, a| {
        table.value(a, mu).conj() * (classes.get(mu).size as f64 / n).sqrt()
    });
    PairingMatrix {
        manifold: "s2xs1".into(),
        row_labels: (0..classes.len()).map(|c| qd.class_label(c)).collect(),
        col_labels: (0..table.len()).map(|a| format!("chi{a}")).collect(),
        entries,
        d_pair: n.sqrt(),
        vacuum_row: classes.identity_class(),
        vacuum_col: table.trivial(),
        row_dims: classes.iter().map(|c| (c.size as f64).sqrt()).collect(),
        col_dims: table.degrees().iter().map(|&d| d as f64).collect(),
    }
    .checked()
}

/// The anyons `(C, π)` of the Drinfeld double, `d = n_C · dim π`.
pub fn drinfeld_double_anyons(qd: &QuantumDouble) -> Result<Vec<LoopSector>> {
    loop_sectors(qd)
}

pub fn anyon_label(qd: &QuantumDouble, a: &LoopSector) -> String {
    format!("({}, pi{})", qd.class_label(a.class), a.irrep)
}

/// `S_{(A,π),(B,ρ)} = (1/|G|) Σ_{a∈A, b∈B, ab=ba} χ̄_π(x_a⁻¹ b x_a) χ̄_ρ(x_b⁻¹ a x_b)`
/// with `x_a` the minimal conjugator taking the representative of `A` to `a`.
pub fn anyon_s_matrix(qd: &QuantumDouble) -> Result<PairingMatrix> {
    let group = qd.group();
    let classes = qd.classes();
    let centralizers = qd.centralizers()?;
    let anyons = drinfeld_double_anyons(qd)?;
    let n = group.order();
    let conjugator: Vec<usize> = group.elements().map(|x| qd.conjugator(x)).collect();

    // per class pair: (local class of x_a⁻¹ b x_a in E_A, local class of x_b⁻¹ a x_b in E_B)
    let r = classes.len();
    let mut pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); r * r];
    for ca in classes.iter() {
        for cb in classes.iter() {
            let (ea, eb) = (&centralizers[ca.id], &centralizers[cb.id]);
            let list = &mut pairs[ca.id * r + cb.id];
            for &a in &ca.members {
                for &b in &cb.members {
                    if !group.commutes(a, b) {
                        continue;
                    }
                    let xa = conjugator[a];
                    let xb = conjugator[b];
                    let ba = group.mul(group.mul(group.inv(xa), b), xa);
                    let ab = group.mul(group.mul(group.inv(xb), a), xb);
                    let la = ea
                        .subgroup
                        .local(ba)
                        .expect("conjugated element centralizes the representative");
                    let lb = eb
                        .subgroup
                        .local(ab)
                        .expect("conjugated element centralizes the representative");
                    list.push((ea.classes.class_of(la), eb.classes.class_of(lb)));
                }
            }
        }
    }

    let m = anyons.len();
    let entries = DMatrix::from_fn(m, m, |i, j| {
        let (x, y) = (&anyons[i], &anyons[j]);
        let (ex, ey) = (&centralizers[x.class], &centralizers[y.class]);
        let sum: C64 = pairs[x.class * r + y.class]
            .iter()
            .map(|&(cx, cy)| ex.table.value(x.irrep, cx).conj() * ey.table.value(y.irrep, cy).conj())
            .sum();
        sum / n as f64
    });
    let vacuum = anyons
        .iter()
        .position(|a| a.class == classes.identity_class() && a.irrep == centralizers[a.class].table.trivial())
        .unwrap_or(0);
    let dims: Vec<f64> = anyons.iter().map(|a| a.d as f64).collect();
    PairingMatrix {
        manifold: "t2".into(),
        row_labels: anyons.iter().map(|a| anyon_label(qd, a)).collect(),
        col_labels: anyons.iter().map(|a| anyon_label(qd, a)).collect(),
        entries,
        d_pair: n as f64,
        vacuum_row: vacuum,
        vacuum_col: vacuum,
        row_dims: dims.clone(),
        col_dims: dims,
    }
    .checked()
}

/// A closed manifold with a computable type-I pairing matrix. Type-II and
/// type-III pairings would implement this too once model data exists for them.
pub trait PairingManifold {
    fn name(&self) -> &'static str;
    fn pairing_matrix(&self, qd: &QuantumDouble) -> Result<PairingMatrix>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Manifold {
    S2xS1,
    Torus,
}

impl PairingManifold for Manifold {
    fn name(&self) -> &'static str {
        match self {
            Manifold::S2xS1 => "s2xs1",
            Manifold::Torus => "t2",
        }
    }

    fn pairing_matrix(&self, qd: &QuantumDouble) -> Result<PairingMatrix> {
        match self {
            Manifold::S2xS1 => pairing_matrix_s2s1(qd),
            Manifold::Torus => anyon_s_matrix(qd),
        }
    }
}

impl FromStr for Manifold {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s2xs1" => Ok(Manifold::S2xS1),
            "t2" | "torus" => Ok(Manifold::Torus),
            _ => Err(Error::InvalidLabel(s.to_string())),
        }
    }
}
