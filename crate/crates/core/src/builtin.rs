//! The builtin group zoo.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupSource, Permutation};

/// Builtin names accepted by [`builtin`], besides `Z<n>`.
pub const BUILTIN_NAMES: &[&str] = &["S3", "S4", "A4", "A5", "D4", "Q8", "Z2xZ2"];

/// The groups used throughout the test suites.
pub const ZOO: &[&str] = &["Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8", "A4", "S4", "A5"];

fn perm_group(degree: usize, gens: &[&str], cap: usize) -> Result<FiniteGroup> {
    let gens: Vec<Permutation> = gens
        .iter()
        .map(|g| Permutation::parse_cycles(g, degree).expect("builtin generators are valid"))
        .collect();
    FiniteGroup::from_permutations(&gens, cap)
}

/// Builds a builtin group by name: `Z<n>`, `S3`, `S4`, `A4`, `A5`, `D4`, `Q8`, `Z2xZ2`.
/// Matching is case-insensitive.
pub fn builtin(name: &str, cap: usize) -> Result<FiniteGroup> {
    let upper = name.trim().to_ascii_uppercase();
    let group = match upper.as_str() {
        "S3" => s3(cap)?,
        "S4" => perm_group(4, &["(1 2 3 4)", "(1 2)"], cap)?,
        "A4" => perm_group(4, &["(1 2 3)", "(1 2)(3 4)"], cap)?,
        "A5" => perm_group(5, &["(1 2 3 4 5)", "(1 2 3)"], cap)?,
        "D4" => perm_group(4, &["(1 2 3 4)", "(1 3)"], cap)?,
        "Q8" => q8()?,
        "Z2XZ2" => perm_group(4, &["(1 2)", "(3 4)"], cap)?,
        _ => {
            let n: usize = upper
                .strip_prefix('Z')
                .and_then(|s| s.parse().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
            cyclic(n, cap)?
        }
    };
    let canonical = match upper.as_str() {
        "Z2XZ2" => "Z2xZ2".to_string(),
        _ => upper,
    };
    Ok(group.with_source(GroupSource::Builtin { name: canonical }))
}

fn cyclic(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n > cap {
        return Err(Error::GroupTooLarge { cap });
    }
    let gen = if n == 1 {
        Permutation::identity(1)
    } else {
        Permutation::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect())
            .expect("rotation is a permutation")
    };
    let g = FiniteGroup::from_permutations(&[gen], cap)?;
    // BFS from the identity with one generator gives id k = gen^k.
    let names = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "a".to_string(),
            k => format!("a^{k}"),
        })
        .collect();
    Ok(g.with_names(names))
}

/// S₃ with `r = (1 2 3)` and `s = (1 2)`, elements named `s^j r^i`.
fn s3(cap: usize) -> Result<FiniteGroup> {
    let g = perm_group(3, &["(1 2 3)", "(1 2)"], cap)?;
    let (r, s) = (1, 2);
    let mut names = vec![String::new(); 6];
    for j in 0..2 {
        let sj = if j == 0 { g.identity() } else { s };
        let mut x = sj;
        for i in 0..3 {
            let name = match (j, i) {
                (0, 0) => "1".to_string(),
                (0, 1) => "r".to_string(),
                (0, i) => format!("r^{i}"),
                (1, 0) => "s".to_string(),
                (1, 1) => "sr".to_string(),
                (1, i) => format!("sr^{i}"),
                _ => unreachable!(),
            };
            names[x] = name;
            x = g.mul(x, r);
        }
    }
    Ok(g.with_names(names))
}

/// Quaternion units under multiplication.
fn q8() -> Result<FiniteGroup> {
    // ids: 2u + sign, u ∈ {1, i, j, k}; sign 0 = +, 1 = −
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let table: Vec<Vec<usize>> = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (u, neg) = UNIT[a / 2][b / 2];
                    let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
                    2 * u + sign as usize
                })
                .collect()
        })
        .collect();
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Ok(FiniteGroup::from_cayley_table(&table)?.with_names(names))
}
