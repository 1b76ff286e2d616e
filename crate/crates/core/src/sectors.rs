//! Superselection sectors of the quantum double: point particles, pure
//! fluxes, shrinkable loops and genus-g graph excitations.
//!
//! Graph sectors of genus `g` are orbits of `G^g` under simultaneous
//! conjugation; the orbit size is the squared quantum dimension.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::double::QuantumDouble;
use crate::error::{Error, Result};
use crate::group::{ConjugacyClasses, FiniteGroup};

/// Default cap on `|G|^g` for orbit enumeration.
pub const DEFAULT_ENUM_CAP: u128 = 100_000_000;

/// Above this many tuples the visited bitset is replaced by the canonical test.
pub const VISITED_THRESHOLD: u128 = 1 << 28;

/// A quantum dimension stored through its integer square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuantumDim {
    pub squared: u64,
}

impl QuantumDim {
    pub fn from_integer(d: u64) -> Self {
        QuantumDim { squared: d * d }
    }

    pub fn from_squared(squared: u64) -> Self {
        QuantumDim { squared }
    }

    pub fn value(self) -> f64 {
        (self.squared as f64).sqrt()
    }

    /// `Some(d)` when `d²` is a perfect square.
    pub fn as_integer(self) -> Option<u64> {
        let r = (self.squared as f64).sqrt().round() as u64;
        (r * r == self.squared).then_some(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointSector {
    pub irrep: usize,
    pub d: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FluxSector {
    pub class: usize,
    /// `d² = n_C`.
    pub d_squared: u64,
}

impl FluxSector {
    pub fn dim(&self) -> QuantumDim {
        QuantumDim::from_squared(self.d_squared)
    }
}

/// A shrinkable loop `(C_b, R)` with `R` an irrep of `E(C_b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopSector {
    pub class: usize,
    pub irrep: usize,
    /// `d = n_C · dim R`.
    pub d: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSector {
    pub genus: usize,
    /// Lexicographically minimal tuple of the orbit.
    pub representative: Vec<usize>,
    /// Orbit size, equal to `d²`.
    pub orbit_size: u64,
    /// Class of each cycle's holonomy.
    pub cycle_classes: Vec<usize>,
    /// Genus 2 only: class of `g·h`.
    pub lambda: Option<usize>,
    /// Genus 2 only: class of `[g, h]`.
    pub rho: Option<usize>,
}

impl GraphSector {
    pub fn dim(&self) -> QuantumDim {
        QuantumDim::from_squared(self.orbit_size)
    }
}

/// `(μ, ν, λ, ρ)` of a genus-2 sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Genus2Decorations {
    pub mu: usize,
    pub nu: usize,
    pub lambda: usize,
    pub rho: usize,
}

pub fn point_sectors(qd: &QuantumDouble) -> Vec<PointSector> {
    qd.table()
        .irreps()
        .iter()
        .enumerate()
        .map(|(irrep, ir)| PointSector {
            irrep,
            d: ir.degree as u64,
        })
        .collect()
}

pub fn flux_sectors(classes: &ConjugacyClasses) -> Vec<FluxSector> {
    classes
        .iter()
        .map(|c| FluxSector {
            class: c.id,
            d_squared: c.size as u64,
        })
        .collect()
}

/// One sector per (class, centralizer irrep), in class order then irrep order.
pub fn loop_sectors(qd: &QuantumDouble) -> Result<Vec<LoopSector>> {
    let centralizers = qd.centralizers()?;
    Ok(qd
        .classes()
        .iter()
        .zip(centralizers)
        .flat_map(|(c, e)| {
            e.table.irreps().iter().enumerate().map(move |(irrep, ir)| LoopSector {
                class: c.id,
                irrep,
                d: (c.size * ir.degree) as u64,
            })
        })
        .collect())
}

/// `(1/|G|) Σ_h |E(h)|^g`, summed per class in exact integers.
pub fn count_graph_sectors(group: &FiniteGroup, classes: &ConjugacyClasses, genus: usize) -> BigUint {
    let total: BigUint = classes
        .iter()
        .map(|c| BigUint::from(c.size) * BigUint::from(c.centralizer_order()).pow(genus as u32))
        .sum();
    let order = BigUint::from(group.order());
    debug_assert!((&total % &order).is_zero());
    total / order
}

/// How `enumerate_graph_sectors` finds orbit representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Visited bitset below [`VISITED_THRESHOLD`], canonical test above.
    #[default]
    Auto,
    /// Mark every orbit member in a bitset over all tuples.
    Visited,
    /// A tuple starts a new orbit iff no conjugate is lexicographically smaller.
    Canonical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub cap: u128,
    pub strategy: Strategy,
    /// Worker threads for the canonical test; `1` runs inline.
    pub threads: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            cap: DEFAULT_ENUM_CAP,
            strategy: Strategy::Auto,
            threads: 1,
        }
    }
}

/// `|G|^g` as a `u128`, saturating.
pub fn tuple_count(order: usize, genus: usize) -> u128 {
    (order as u128).checked_pow(genus as u32).unwrap_or(u128::MAX)
}

/// Flat `t·x·t⁻¹` table indexed `t * n + x`.
fn conjugation_table(group: &FiniteGroup) -> Vec<u32> {
    let n = group.order();
    let mut out = Vec::with_capacity(n * n);
    for t in 0..n {
        for x in 0..n {
            out.push(group.conjugate(t, x) as u32);
        }
    }
    out
}

struct Tuples {
    n: u64,
    genus: usize,
}

impl Tuples {
    fn decode(&self, mut index: u64, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = (index % self.n) as usize;
            index /= self.n;
        }
    }

    fn encode(&self, tuple: impl Iterator<Item = usize>) -> u64 {
        tuple.fold(0, |acc, x| acc * self.n + x as u64)
    }
}

/// Orbits of `G^g` under simultaneous conjugation, ordered by
/// (orbit size, representative).
pub fn enumerate_graph_sectors(
    group: &FiniteGroup,
    classes: &ConjugacyClasses,
    genus: usize,
    opts: &EnumOptions,
) -> Result<Vec<GraphSector>> {
    let n = group.order();
    let requested = tuple_count(n, genus);
    if requested > opts.cap {
        return Err(Error::EnumerationCapExceeded {
            requested,
            cap: opts.cap,
        });
    }
    let strategy = match opts.strategy {
        Strategy::Auto if requested <= VISITED_THRESHOLD && opts.threads <= 1 => Strategy::Visited,
        Strategy::Auto => Strategy::Canonical,
        s => s,
    };
    let conj = conjugation_table(group);
    let tuples = Tuples { n: n as u64, genus };
    let total = requested as u64;
    let raw = match strategy {
        Strategy::Visited => enumerate_visited(&tuples, total, &conj),
        _ => enumerate_canonical(&tuples, total, &conj, opts.threads),
    };
    let mut sectors: Vec<GraphSector> = raw
        .into_iter()
        .map(|(index, orbit_size)| {
            let mut rep = vec![0; genus];
            tuples.decode(index, &mut rep);
            decorate(group, classes, rep, orbit_size)
        })
        .collect();
    sectors.sort_by(|a, b| (a.orbit_size, &a.representative).cmp(&(b.orbit_size, &b.representative)));
    Ok(sectors)
}

fn decorate(group: &FiniteGroup, classes: &ConjugacyClasses, rep: Vec<usize>, orbit_size: u64) -> GraphSector {
    let cycle_classes = rep.iter().map(|&x| classes.class_of(x)).collect();
    let (lambda, rho) = if rep.len() == 2 {
        (
            Some(classes.class_of(group.mul(rep[0], rep[1]))),
            Some(classes.class_of(group.commutator(rep[0], rep[1]))),
        )
    } else {
        (None, None)
    };
    GraphSector {
        genus: rep.len(),
        representative: rep,
        orbit_size,
        cycle_classes,
        lambda,
        rho,
    }
}

fn enumerate_visited(tuples: &Tuples, total: u64, conj: &[u32]) -> Vec<(u64, u64)> {
    let n = tuples.n as usize;
    let mut visited = vec![0u64; (total as usize).div_ceil(64)];
    let mut out = Vec::new();
    let mut tuple = vec![0usize; tuples.genus];
    for index in 0..total {
        let (w, b) = ((index / 64) as usize, index % 64);
        if visited[w] >> b & 1 == 1 {
            continue;
        }
        tuples.decode(index, &mut tuple);
        let mut size = 0;
        for t in 0..n {
            let row = &conj[t * n..(t + 1) * n];
            let image = tuples.encode(tuple.iter().map(|&x| row[x] as usize));
            let (w, b) = ((image / 64) as usize, image % 64);
            if visited[w] >> b & 1 == 0 {
                visited[w] |= 1 << b;
                size += 1;
            }
        }
        out.push((index, size));
    }
    out
}

/// `Some(orbit size)` iff `index` is the minimal tuple of its orbit.
fn canonical_orbit_size(tuples: &Tuples, index: u64, conj: &[u32], tuple: &mut [usize]) -> Option<u64> {
    let n = tuples.n as usize;
    tuples.decode(index, tuple);
    let mut stabilizer = 0u64;
    'conj: for t in 0..n {
        let row = &conj[t * n..(t + 1) * n];
        // lexicographic comparison of the image against the tuple
        for &x in tuple.iter() {
            let y = row[x] as usize;
            if y < x {
                return None;
            }
            if y > x {
                continue 'conj;
            }
        }
        stabilizer += 1;
    }
    Some(tuples.n / stabilizer)
}

fn canonical_range(tuples: &Tuples, range: std::ops::Range<u64>, conj: &[u32]) -> Vec<(u64, u64)> {
    let mut tuple = vec![0usize; tuples.genus];
    range
        .filter_map(|i| canonical_orbit_size(tuples, i, conj, &mut tuple).map(|s| (i, s)))
        .collect()
}

#[cfg(feature = "parallel")]
fn enumerate_canonical(tuples: &Tuples, total: u64, conj: &[u32], threads: usize) -> Vec<(u64, u64)> {
    use rayon::prelude::*;
    if threads <= 1 {
        return canonical_range(tuples, 0..total, conj);
    }
    let chunks = (threads as u64 * 8).min(total.max(1));
    let step = total.div_ceil(chunks).max(1);
    let run = || {
        (0..chunks)
            .into_par_iter()
            .map(|c| canonical_range(tuples, (c * step).min(total)..((c + 1) * step).min(total), conj))
            .collect::<Vec<_>>()
    };
    let parts = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    parts.into_iter().flatten().collect()
}

#[cfg(not(feature = "parallel"))]
fn enumerate_canonical(tuples: &Tuples, total: u64, conj: &[u32], _threads: usize) -> Vec<(u64, u64)> {
    canonical_range(tuples, 0..total, conj)
}

/// Classes of `g`, `h`, `gh` and `[g, h]` for a genus-2 sector.
pub fn genus2_decorations(
    group: &FiniteGroup,
    classes: &ConjugacyClasses,
    sector: &GraphSector,
) -> Result<Genus2Decorations> {
    if sector.genus != 2 || sector.representative.len() != 2 {
        return Err(Error::WrongGenus {
            expected: 2,
            found: sector.genus,
        });
    }
    let (g, h) = (sector.representative[0], sector.representative[1]);
    Ok(Genus2Decorations {
        mu: classes.class_of(g),
        nu: classes.class_of(h),
        lambda: classes.class_of(group.mul(g, h)),
        rho: classes.class_of(group.commutator(g, h)),
    })
}

/// `ln(orbit size)`, i.e. `2 ln d`, in nats.
pub fn sector_entropy(sector: &GraphSector) -> f64 {
    (sector.orbit_size as f64).ln()
}

/// `Σ d²` over a list of graph sectors.
pub fn total_dim_squared(sectors: &[GraphSector]) -> BigUint {
    sectors.iter().map(|s| BigUint::from(s.orbit_size)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use crate::group::{conjugacy_classes, DEFAULT_ELEMENT_CAP};

    fn setup(name: &str) -> (FiniteGroup, ConjugacyClasses) {
        let g = builtin(name, DEFAULT_ELEMENT_CAP).unwrap();
        let c = conjugacy_classes(&g);
        (g, c)
    }

    #[test]
    fn s3_genus2_count_and_dims() {
        let (g, c) = setup("S3");
        assert_eq!(count_graph_sectors(&g, &c, 2), BigUint::from(11u32));
        let sectors = enumerate_graph_sectors(&g, &c, 2, &EnumOptions::default()).unwrap();
        let mut dims: Vec<u64> = sectors.iter().map(|s| s.orbit_size).collect();
        dims.sort();
        let mut expected = vec![1, 2, 2, 3, 3, 2, 2, 6, 6, 3, 6];
        expected.sort();
        assert_eq!(dims, expected);
    }

    #[test]
    fn genus_one_counts_classes() {
        for name in ["S3", "Q8", "A4", "Z4"] {
            let (g, c) = setup(name);
            assert_eq!(count_graph_sectors(&g, &c, 1), BigUint::from(c.len()));
            let sectors = enumerate_graph_sectors(&g, &c, 1, &EnumOptions::default()).unwrap();
            let mut d2: Vec<u64> = sectors.iter().map(|s| s.orbit_size).collect();
            let mut sizes: Vec<u64> = c.sizes().into_iter().map(|s| s as u64).collect();
            d2.sort();
            sizes.sort();
            assert_eq!(d2, sizes, "{name}");
        }
    }

    #[test]
    fn abelian_and_trivial() {
        let (g, c) = setup("Z2");
        assert_eq!(count_graph_sectors(&g, &c, 3), BigUint::from(8u32));
        let s = enumerate_graph_sectors(&g, &c, 2, &EnumOptions::default()).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|x| x.orbit_size == 1));
        let (g, c) = setup("Z1");
        for genus in 1..4 {
            let s = enumerate_graph_sectors(&g, &c, genus, &EnumOptions::default()).unwrap();
            assert_eq!(s.len(), 1);
            assert_eq!(s[0].orbit_size, 1);
        }
    }

    #[test]
    fn strategies_agree() {
        let (g, c) = setup("A4");
        let base = EnumOptions::default();
        let visited = enumerate_graph_sectors(
            &g,
            &c,
            3,
            &EnumOptions {
                strategy: Strategy::Visited,
                ..base
            },
        )
        .unwrap();
        let canonical = enumerate_graph_sectors(
            &g,
            &c,
            3,
            &EnumOptions {
                strategy: Strategy::Canonical,
                ..base
            },
        )
        .unwrap();
        let threaded = enumerate_graph_sectors(
            &g,
            &c,
            3,
            &EnumOptions {
                strategy: Strategy::Canonical,
                threads: 4,
                ..base
            },
        )
        .unwrap();
        assert_eq!(visited, canonical);
        assert_eq!(canonical, threaded);
    }

    #[test]
    fn cap_is_enforced() {
        let (g, c) = setup("S3");
        let opts = EnumOptions {
            cap: 35,
            ..Default::default()
        };
        assert_eq!(
            enumerate_graph_sectors(&g, &c, 2, &opts).unwrap_err(),
            Error::EnumerationCapExceeded { requested: 36, cap: 35 }
        );
    }

    #[test]
    fn decorations() {
        let (g, c) = setup("S3");
        let id = |n: &str| g.element_by_name(n).unwrap();
        let (c1, cr, cs) = (0, 1, 2);
        let sector = |a: &str, b: &str| {
            let sectors = enumerate_graph_sectors(&g, &c, 2, &EnumOptions::default()).unwrap();
            let target = [id(a), id(b)];
            sectors
                .into_iter()
                .find(|s| (0..6).any(|t| s.representative == [g.conjugate(t, target[0]), g.conjugate(t, target[1])]))
                .unwrap()
        };
        let ss = sector("s", "s");
        assert_eq!(
            genus2_decorations(&g, &c, &ss).unwrap(),
            Genus2Decorations {
                mu: cs,
                nu: cs,
                lambda: c1,
                rho: c1
            }
        );
        assert_eq!(ss.orbit_size, 3);
        let ssr = sector("s", "sr");
        assert_eq!(
            genus2_decorations(&g, &c, &ssr).unwrap(),
            Genus2Decorations {
                mu: cs,
                nu: cs,
                lambda: cr,
                rho: cr
            }
        );
        assert_eq!(ssr.orbit_size, 6);
        let re = sector("r", "1");
        let d = genus2_decorations(&g, &c, &re).unwrap();
        assert_eq!((d.lambda, d.rho), (cr, c1));
        assert!((sector_entropy(&sector("r", "s")) - 6f64.ln()).abs() < 1e-15);

        let g1 = enumerate_graph_sectors(&g, &c, 1, &EnumOptions::default()).unwrap();
        assert_eq!(
            genus2_decorations(&g, &c, &g1[0]).unwrap_err(),
            Error::WrongGenus { expected: 2, found: 1 }
        );
    }

    #[test]
    fn vacuum_entropy_is_zero() {
        let (g, c) = setup("S3");
        let s = enumerate_graph_sectors(&g, &c, 2, &EnumOptions::default()).unwrap();
        assert_eq!(s[0].representative, vec![0, 0]);
        assert_eq!(sector_entropy(&s[0]), 0.0);
    }

    #[test]
    fn quantum_dims() {
        assert_eq!(QuantumDim::from_squared(4).as_integer(), Some(2));
        assert_eq!(QuantumDim::from_squared(3).as_integer(), None);
        assert!((QuantumDim::from_squared(2).value() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn loop_sector_counts() {
        let qd = QuantumDouble::new(builtin("S3", DEFAULT_ELEMENT_CAP).unwrap()).unwrap();
        let loops = loop_sectors(&qd).unwrap();
        assert_eq!(loops.len(), 8);
        let per_class: Vec<usize> = (0..3).map(|c| loops.iter().filter(|l| l.class == c).count()).collect();
        assert_eq!(per_class, vec![3, 3, 2]);
        let sum: u64 = loops.iter().map(|l| l.d * l.d).sum();
        assert_eq!(sum, 36);

        let z2 = QuantumDouble::new(builtin("Z2", DEFAULT_ELEMENT_CAP).unwrap()).unwrap();
        let loops = loop_sectors(&z2).unwrap();
        assert_eq!(loops.len(), 4);
        assert!(loops.iter().all(|l| l.d == 1));

        let z1 = QuantumDouble::new(builtin("Z1", DEFAULT_ELEMENT_CAP).unwrap()).unwrap();
        assert_eq!(
            loop_sectors(&z1).unwrap(),
            vec![LoopSector {
                class: 0,
                irrep: 0,
                d: 1
            }]
        );
    }

    #[test]
    fn flux_dims_match_class_sizes() {
        let (_, c) = setup("S3");
        let d2: Vec<u64> = flux_sectors(&c).iter().map(|f| f.d_squared).collect();
        assert_eq!(d2, vec![1, 2, 3]);
    }
}
