//! A group bundled with the derived data every quantum double computation needs.

use std::sync::OnceLock;

use crate::chartable::{character_table, CharacterTable, DEFAULT_SEED};
use crate::error::Result;
use crate::group::{conjugacy_classes, ConjugacyClasses, FiniteGroup, Subgroup};

/// Centralizer `E(rep)` of one class representative with its own classes and table.
#[derive(Debug, Clone)]
pub struct Centralizer {
    pub subgroup: Subgroup,
    pub classes: ConjugacyClasses,
    pub table: CharacterTable,
}

impl Centralizer {
    pub fn order(&self) -> usize {
        self.subgroup.order()
    }

    /// Value of centralizer irrep `i` on a parent element lying in the centralizer.
    pub fn value_at(&self, i: usize, parent_elem: usize) -> Option<crate::chartable::C64> {
        let local = self.subgroup.local(parent_elem)?;
        Some(self.table.value(i, self.classes.class_of(local)))
    }
}

/// Group, conjugacy classes and character table, plus lazily built
/// centralizer tables. Safe to share across threads.
#[derive(Debug)]
pub struct QuantumDouble {
    group: FiniteGroup,
    classes: ConjugacyClasses,
    table: CharacterTable,
    seed: u64,
    centralizers: OnceLock<Result<Vec<Centralizer>>>,
}

impl QuantumDouble {
    pub fn new(group: FiniteGroup) -> Result<Self> {
        Self::with_seed(group, DEFAULT_SEED)
    }

    pub fn with_seed(group: FiniteGroup, seed: u64) -> Result<Self> {
        let classes = conjugacy_classes(&group);
        let table = character_table(&group, &classes, seed)?;
        Ok(QuantumDouble {
            group,
            classes,
            table,
            seed,
            centralizers: OnceLock::new(),
        })
    }

    /// Replaces the character table without validation (fault injection).
    pub fn with_table(self, table: CharacterTable) -> Self {
        QuantumDouble { table, ..self }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// One centralizer per class, in class order.
    pub fn centralizers(&self) -> Result<&[Centralizer]> {
        self.centralizers
            .get_or_init(|| {
                self.classes
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let subgroup = Subgroup::from_members(&self.group, c.centralizer.clone());
                        let classes = conjugacy_classes(subgroup.group());
                        let seed = self.seed.wrapping_add(i as u64 + 1);
                        let table = character_table(subgroup.group(), &classes, seed)?;
                        Ok(Centralizer {
                            subgroup,
                            classes,
                            table,
                        })
                    })
                    .collect()
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// Minimal `t` with `t · rep · t⁻¹ = x`, where `rep` represents the class of `x`.
    pub fn conjugator(&self, x: usize) -> usize {
        let rep = self.classes.get(self.classes.class_of(x)).representative;
        self.group
            .elements()
            .find(|&t| self.group.conjugate(t, rep) == x)
            .expect("x is conjugate to its class representative")
    }

    pub fn class_label(&self, c: usize) -> String {
        self.classes.label(&self.group, c)
    }
}
