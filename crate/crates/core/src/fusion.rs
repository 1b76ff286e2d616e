//! Fusion multiplicities, fusion probabilities of flux loops, and capacities.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::chartable::{snap_integer, CharacterTable, C64, SNAP_TOLERANCE};
use crate::double::QuantumDouble;
use crate::error::{Error, Result};
use crate::group::{ConjugacyClasses, FiniteGroup};
use crate::sectors::{loop_sectors, GraphSector, LoopSector, QuantumDim};

/// Exact probability.
pub type Probability = Ratio<u64>;

/// Snaps a complex sum to a non-negative integer.
fn snap_count(z: C64) -> Result<u64> {
    let bad = |residual| Error::NonIntegerResult { value: z.re, residual };
    if z.im.abs() >= SNAP_TOLERANCE {
        return Err(bad(z.im.abs()));
    }
    match snap_integer(z.re) {
        Ok(v) if v >= 0 => Ok(v as u64),
        Ok(_) => Err(bad(z.re.abs())),
        Err(residual) => Err(bad(residual)),
    }
}

/// Raw `(1/|G|) Σ_C n_C Π_i χ_{a_i}(C)` before snapping.
pub fn invariant_dim_raw(table: &CharacterTable, irreps: &[usize]) -> C64 {
    let sizes = table.class_sizes();
    let sum: C64 = (0..sizes.len())
        .map(|c| {
            let prod: C64 = irreps.iter().map(|&a| table.value(a, c)).product();
            prod * sizes[c] as f64
        })
        .sum();
    sum / table.group_order() as f64
}

/// Dimension of the invariant subspace of `a_1 ⊗ … ⊗ a_k`, i.e. `N_{a_1⋯a_k}^1`.
pub fn point_fusion_invariant_dim(table: &CharacterTable, irreps: &[usize]) -> Result<u64> {
    snap_count(invariant_dim_raw(table, irreps))
}

/// `N_{ab}^c = N_{a b c̄}^1`.
pub fn point_fusion_nabc(table: &CharacterTable, a: usize, b: usize, c: usize) -> Result<u64> {
    let cbar = table.conjugate(c)?;
    point_fusion_invariant_dim(table, &[a, b, cbar])
}

/// Raw `(1/|E_b|) Σ_{g∈E_b} χ_R(g) χ̄_a(g)` before snapping.
pub fn loop_point_raw(qd: &QuantumDouble, sector: &LoopSector, a: usize) -> Result<C64> {
    let e = &qd.centralizers()?[sector.class];
    let parent = qd.classes();
    let sum: C64 = e
        .classes
        .iter()
        .map(|c| {
            let g = e.subgroup.embed(c.representative);
            e.table.value(sector.irrep, c.id) * qd.table().value(a, parent.class_of(g)).conj() * c.size as f64
        })
        .sum();
    Ok(sum / e.order() as f64)
}

/// `N_ℓ^a` for `ℓ = (C_b, R)`: the multiplicity of `R` in `a` restricted to `E(C_b)`.
pub fn loop_point_multiplicity(qd: &QuantumDouble, sector: &LoopSector, a: usize) -> Result<u64> {
    snap_count(loop_point_raw(qd, sector, a)?)
}

/// `N_ℓ^a` for every loop sector (rows) and point sector (columns).
pub fn loop_point_table(qd: &QuantumDouble) -> Result<Vec<Vec<u64>>> {
    let loops = loop_sectors(qd)?;
    loops
        .iter()
        .map(|l| {
            (0..qd.table().len())
                .map(|a| loop_point_multiplicity(qd, l, a))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Probabilities {
    /// Every quantum dimension was an integer.
    Exact(Vec<Probability>),
    Approx(Vec<f64>),
}

impl Probabilities {
    pub fn as_f64(&self) -> Vec<f64> {
        match self {
            Probabilities::Exact(p) => p.iter().map(|r| ratio_f64(*r)).collect(),
            Probabilities::Approx(p) => p.clone(),
        }
    }
}

/// `P_I = N_I d_I / Σ_J N_J d_J`.
pub fn sector_probability(multiplicities: &[u64], dims: &[QuantumDim]) -> Result<Probabilities> {
    if multiplicities.len() != dims.len() {
        return Err(Error::InvalidArgument(
            "multiplicities and dims differ in length".into(),
        ));
    }
    if multiplicities.iter().all(|&n| n == 0) {
        return Err(Error::AllZeroMultiplicities);
    }
    let integer: Option<Vec<u64>> = dims.iter().map(|d| d.as_integer()).collect();
    Ok(match integer {
        Some(ds) => {
            let weights: Vec<u64> = multiplicities.iter().zip(&ds).map(|(n, d)| n * d).collect();
            let total: u64 = weights.iter().sum();
            Probabilities::Exact(weights.iter().map(|&w| Ratio::new(w, total)).collect())
        }
        None => {
            let weights: Vec<f64> = multiplicities
                .iter()
                .zip(dims)
                .map(|(&n, d)| n as f64 * d.value())
                .collect();
            let total: f64 = weights.iter().sum();
            Probabilities::Approx(weights.iter().map(|w| w / total).collect())
        }
    })
}

pub fn ratio_f64(r: Probability) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// One orbit `(μ, ν, λ)_k` of the pairs `(g, h) ∈ μ × ν`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionChannel {
    pub representative: (usize, usize),
    pub lambda: usize,
    pub rho: usize,
    /// Position among the orbits sharing `λ`.
    pub k: usize,
    pub d_squared: u64,
    #[serde(skip)]
    pub p: Probability,
}

/// Outcome distribution of fusing the pure fluxes `μ` and `ν`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FluxFusionTable {
    pub mu: usize,
    pub nu: usize,
    /// Orbits ordered by (λ, d², representative).
    pub channels: Vec<FusionChannel>,
}

impl FluxFusionTable {
    /// `P(μ×ν→λ)` grouped over `k`, ascending class order, zero entries omitted.
    pub fn by_lambda(&self) -> Vec<(usize, Probability)> {
        group_probabilities(self.channels.iter().map(|c| (c.lambda, c.p)))
    }

    /// Borromean outcome distribution over the class of `[g, h]`.
    pub fn by_rho(&self) -> Vec<(usize, Probability)> {
        group_probabilities(self.channels.iter().map(|c| (c.rho, c.p)))
    }

    pub fn probability(&self, lambda: usize) -> Probability {
        self.channels
            .iter()
            .filter(|c| c.lambda == lambda)
            .fold(Probability::zero(), |acc, c| acc + c.p)
    }

    pub fn total_dim_squared(&self) -> u64 {
        self.channels.iter().map(|c| c.d_squared).sum()
    }

    /// Flattens into records keyed by `λ` (with `k`).
    pub fn records(&self, qd: &QuantumDouble) -> Vec<FusionRecord> {
        let inputs = vec![qd.class_label(self.mu), qd.class_label(self.nu)];
        self.channels
            .iter()
            .map(|c| FusionRecord {
                inputs: inputs.clone(),
                output: format!("{}#{}", qd.class_label(c.lambda), c.k),
                value: FusionValue::Probability(c.p),
            })
            .collect()
    }
}

fn group_probabilities(items: impl Iterator<Item = (usize, Probability)>) -> Vec<(usize, Probability)> {
    let mut out: Vec<(usize, Probability)> = Vec::new();
    for (class, p) in items {
        match out.iter_mut().find(|(c, _)| *c == class) {
            Some((_, acc)) => *acc += p,
            None => out.push((class, p)),
        }
    }
    out.sort_by_key(|(c, _)| *c);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FusionValue {
    Multiplicity(u64),
    Probability(Probability),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRecord {
    pub inputs: Vec<String>,
    pub output: String,
    pub value: FusionValue,
}

/// Groups the `n_μ n_ν` pairs `(g, h)` into conjugation orbits; each orbit
/// contributes `|orbit| / (n_μ n_ν)` to the class of `gh`.
pub fn loop_fusion_table(group: &FiniteGroup, classes: &ConjugacyClasses, mu: usize, nu: usize) -> FluxFusionTable {
    let left = &classes.get(mu).members;
    let right = &classes.get(nu).members;
    let n = group.order();
    let mut pos = vec![usize::MAX; n];
    for (i, &h) in right.iter().enumerate() {
        pos[h] = i;
    }
    let mut lpos = vec![usize::MAX; n];
    for (i, &g) in left.iter().enumerate() {
        lpos[g] = i;
    }
    let total = (left.len() * right.len()) as u64;
    let mut visited = vec![false; left.len() * right.len()];
    let mut channels = Vec::new();
    for (i, &g) in left.iter().enumerate() {
        for (j, &h) in right.iter().enumerate() {
            if visited[i * right.len() + j] {
                continue;
            }
            let mut size = 0u64;
            for t in 0..n {
                let (tg, th) = (group.conjugate(t, g), group.conjugate(t, h));
                let slot = lpos[tg] * right.len() + pos[th];
                if !visited[slot] {
                    visited[slot] = true;
                    size += 1;
                }
            }
            channels.push(FusionChannel {
                representative: (g, h),
                lambda: classes.class_of(group.mul(g, h)),
                rho: classes.class_of(group.commutator(g, h)),
                k: 0,
                d_squared: size,
                p: Ratio::new(size, total),
            });
        }
    }
    // members are sorted, so (g, h) visited first is the lexicographic minimum
    channels.sort_by_key(|c| (c.lambda, c.d_squared, c.representative));
    let mut k = 0;
    for i in 0..channels.len() {
        k = if i > 0 && channels[i - 1].lambda == channels[i].lambda {
            k + 1
        } else {
            0
        };
        channels[i].k = k;
    }
    FluxFusionTable { mu, nu, channels }
}

/// Borromean fusion: distribution over the class of `[g, h]`.
pub fn borromean_fusion(
    group: &FiniteGroup,
    classes: &ConjugacyClasses,
    mu: usize,
    nu: usize,
) -> Vec<(usize, Probability)> {
    loop_fusion_table(group, classes, mu, nu).by_rho()
}

/// The same `λ` distribution read off from enumerated genus-2 graph sectors.
pub fn loop_fusion_from_sectors(
    sectors: &[GraphSector],
    classes: &ConjugacyClasses,
    mu: usize,
    nu: usize,
) -> Vec<(usize, Probability)> {
    let total = (classes.get(mu).size * classes.get(nu).size) as u64;
    group_probabilities(
        sectors
            .iter()
            .filter(|s| s.genus == 2 && s.cycle_classes == [mu, nu])
            .map(|s| {
                (
                    s.lambda.expect("genus-2 sectors carry λ"),
                    Ratio::new(s.orbit_size, total),
                )
            }),
    )
}

/// Regions whose capacity is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    SphereShell,
    SolidTorusFlux,
    SolidTorusLoop,
    Handlebody(usize),
}

impl FromStr for Region {
    type Err = Error;

    /// `sphere-shell`, `solid-torus-flux`, `solid-torus-loop`, `handlebody:<g>`
    /// or `genus-<g>-handlebody`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let genus = t
            .strip_prefix("handlebody:")
            .or_else(|| t.strip_prefix("genus-").and_then(|r| r.strip_suffix("-handlebody")))
            .and_then(|g| g.parse().ok());
        match (t.as_str(), genus) {
            ("sphere-shell", _) => Ok(Region::SphereShell),
            ("solid-torus-flux", _) => Ok(Region::SolidTorusFlux),
            ("solid-torus-loop", _) => Ok(Region::SolidTorusLoop),
            (_, Some(g)) => Ok(Region::Handlebody(g)),
            _ => Err(Error::UnknownRegion(s.to_string())),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::SphereShell => write!(f, "sphere-shell"),
            Region::SolidTorusFlux => write!(f, "solid-torus-flux"),
            Region::SolidTorusLoop => write!(f, "solid-torus-loop"),
            Region::Handlebody(g) => write!(f, "genus-{g}-handlebody"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Capacity {
    pub region: Region,
    pub value: BigUint,
}

/// `Q = Σ N_J d_J` for the region; for these sectorizable regions, `Σ d²`.
pub fn capacity(qd: &QuantumDouble, region: Region) -> Result<Capacity> {
    let value = match region {
        Region::SphereShell => qd.table().degrees().iter().map(|&d| BigUint::from(d * d)).sum(),
        Region::SolidTorusFlux => qd.classes().iter().map(|c| BigUint::from(c.size)).sum(),
        Region::SolidTorusLoop => loop_sectors(qd)?.iter().map(|l| BigUint::from(l.d * l.d)).sum(),
        // Σ over genus-g graph sectors of d² is the size of the orbit partition of G^g
        Region::Handlebody(g) => BigUint::from(qd.order()).pow(g as u32),
    };
    Ok(Capacity { region, value })
}

/// Natural log of a big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    if let Some(v) = x.to_f64().filter(|v| v.is_finite()) {
        return v.ln();
    }
    let shift = x.bits().saturating_sub(64);
    let top = (x >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Topological entanglement entropy `ln Q`, in nats.
pub fn tee(qd: &QuantumDouble, region: Region) -> Result<f64> {
    Ok(ln_big(&capacity(qd, region)?.value))
}
