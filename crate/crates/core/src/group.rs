//! Finite groups given by a full multiplication table.
//!
//! Groups are built either by closing a set of permutation generators or
//! from an explicit Cayley table. Everything downstream only ever touches
//! the table, the inverse map and the identity id.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on the number of group elements.
pub const DEFAULT_ELEMENT_CAP: usize = 20_000;

/// Where a group came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSource {
    Permutations { degree: usize, generators: Vec<String> },
    Table,
    Builtin { name: String },
}

/// A permutation of `{0, .., degree-1}`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> std::result::Result<Self, String> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            let im = im as usize;
            if im >= n {
                return Err(format!("image {} out of range", im + 1));
            }
            if seen[im] {
                return Err(format!("point {} is hit twice", im + 1));
            }
            seen[im] = true;
        }
        Ok(Permutation(images))
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)`; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> std::result::Result<Self, String> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| format!("expected `(` at `{rest}`"))?;
            let close = open.find(')').ok_or_else(|| "unterminated cycle".to_string())?;
            let body = &open[..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok.parse().map_err(|_| format!("`{tok}` is not a point"))?;
                if p == 0 || p > degree {
                    return Err(format!("point {p} outside 1..{degree}"));
                }
                if seen[p - 1] {
                    return Err(format!("point {p} appears twice"));
                }
                seen[p - 1] = true;
                cycle.push(p - 1);
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()] as u32;
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `self` followed by `other`: the point `i` goes to `other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut done = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if done[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !done[p] {
                done[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.0[p] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A finite group with a validated multiplication table.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    identity: usize,
    inv: Vec<u32>,
    names: Vec<String>,
    source: GroupSource,
}

impl FiniteGroup {
    /// Closes `gens` under composition, breadth-first from the identity with
    /// generators applied in input order. The identity gets id 0.
    pub fn from_permutations(gens: &[Permutation], cap: usize) -> Result<Self> {
        let degree = gens.iter().map(Permutation::degree).max().unwrap_or(1).max(1);
        for (index, g) in gens.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::NotAPermutation {
                    index,
                    degree,
                    reason: format!("acts on {} points", g.degree()),
                });
            }
            if let Err(reason) = Permutation::from_images(g.0.clone()) {
                return Err(Error::NotAPermutation { index, degree, reason });
            }
        }

        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        // BFS tree: element id -> (parent id, generator index)
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut right_gen: Vec<u32> = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            for (gi, g) in gens.iter().enumerate() {
                let y = elements[head].then(g);
                let id = match index.get(&y) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::GroupTooLarge { cap });
                        }
                        let id = elements.len() as u32;
                        index.insert(y.clone(), id);
                        elements.push(y);
                        parent.push((head as u32, gi as u32));
                        id
                    }
                };
                right_gen.push(id);
            }
            head += 1;
        }

        let n = elements.len();
        let k = gens.len();
        // mul(a, x·g) = mul(a, x)·g, filled in BFS order.
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut mul[a * n..(a + 1) * n];
            row[0] = a as u32;
            for y in 1..n {
                let (p, gi) = parent[y];
                let ap = row[p as usize] as usize;
                row[y] = right_gen[ap * k + gi as usize];
            }
        }
        let inv = inverses(&mul, n, 0).expect("permutation groups have inverses");
        let names = elements
            .iter()
            .map(|p| {
                if p.is_identity() {
                    "1".to_string()
                } else {
                    p.to_string()
                }
            })
            .collect();
        Ok(FiniteGroup {
            order: n,
            mul,
            identity: 0,
            inv,
            names,
            source: GroupSource::Permutations {
                degree,
                generators: gens.iter().map(ToString::to_string).collect(),
            },
        })
    }

    /// Validates an explicit Cayley table. Element ids are kept as given.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Parse {
                line: 1,
                message: "empty table".into(),
            });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::Parse {
                    line: row + 2,
                    message: format!("row {row} has {} entries, expected {n}", entries.len()),
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(Error::NotClosed {
                        row,
                        col,
                        value,
                        order: n,
                    });
                }
                mul.push(value as u32);
            }
        }
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(Error::NoIdentity)?;
        let inv = inverses(&mul, n, identity)?;
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    let left = at(a, at(b, c));
                    let right = at(ab, c);
                    if left != right {
                        return Err(Error::NotAssociative { a, b, c, left, right });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            mul,
            identity,
            inv,
            names: (0..n).map(|i| i.to_string()).collect(),
            source: GroupSource::Table,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `t · x · t⁻¹`.
    #[inline]
    pub fn conjugate(&self, t: usize, x: usize) -> usize {
        self.mul(self.mul(t, x), self.inv(t))
    }

    /// `g · h · g⁻¹ · h⁻¹`.
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.mul(self.inv(g), self.inv(h)))
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn source(&self) -> &GroupSource {
        &self.source
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|x| self.element_order(x))
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Sorted member ids of the centralizer `E(h) = {k | kh = hk}`.
    pub fn centralizer_members(&self, h: usize) -> Vec<usize> {
        self.elements().filter(|&k| self.commutes(k, h)).collect()
    }

    /// The centralizer of `h` as a group in its own right.
    pub fn centralizer(&self, h: usize) -> Subgroup {
        Subgroup::from_members(self, self.centralizer_members(h))
    }

    pub(crate) fn with_names(mut self, names: Vec<String>) -> Self {
        debug_assert_eq!(names.len(), self.order);
        self.names = names;
        self
    }

    pub(crate) fn with_source(mut self, source: GroupSource) -> Self {
        self.source = source;
        self
    }

    /// Short human-readable descriptor.
    pub fn descriptor(&self) -> String {
        match &self.source {
            GroupSource::Builtin { name } => name.clone(),
            GroupSource::Permutations { generators, .. } => {
                format!("<{}>", generators.join(", "))
            }
            GroupSource::Table => format!("table({})", self.order),
        }
    }

    /// Parses the text group format: `perm <k>` followed by one generator per
    /// line, or `table <n>` followed by `n` rows of `n` ids. Lines starting
    /// with `#` are ignored.
    pub fn parse(text: &str, cap: usize) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty group file".into(),
        })?;
        let mut parts = header.split_whitespace();
        let kind = parts.next().unwrap_or_default();
        let size: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| Error::Parse {
            line: hline,
            message: format!("expected `perm <k>` or `table <n>`, got `{header}`"),
        })?;
        match kind {
            "perm" => {
                let mut gens = Vec::new();
                for (line, l) in lines {
                    let p = Permutation::parse_cycles(l, size).map_err(|message| Error::Parse { line, message })?;
                    gens.push(p);
                }
                Self::from_permutations(&gens, cap)
            }
            "table" => {
                if size > cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                let mut rows = Vec::with_capacity(size);
                for (line, l) in lines {
                    let row: std::result::Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
                    let row = row.map_err(|e| Error::Parse {
                        line,
                        message: format!("bad id: {e}"),
                    })?;
                    rows.push(row);
                }
                if rows.len() != size {
                    return Err(Error::Parse {
                        line: hline,
                        message: format!("expected {size} rows, found {}", rows.len()),
                    });
                }
                Self::from_cayley_table(&rows)
            }
            other => Err(Error::Parse {
                line: hline,
                message: format!("unknown group kind `{other}`"),
            }),
        }
    }

    pub fn from_file(path: impl AsRef<Path>, cap: usize) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        Self::parse(&text, cap)
    }

    /// Resolves a builtin name first, then falls back to a file path.
    pub fn load(spec: &str, cap: usize) -> Result<Self> {
        match crate::builtin::builtin(spec, cap) {
            Ok(g) => Ok(g),
            Err(Error::UnknownGroup(_)) if Path::new(spec).exists() => Self::from_file(spec, cap),
            Err(e) => Err(e),
        }
    }
}

fn inverses(mul: &[u32], n: usize, identity: usize) -> Result<Vec<u32>> {
    (0..n)
        .map(|a| {
            (0..n)
                .find(|&b| mul[a * n + b] as usize == identity && mul[b * n + a] as usize == identity)
                .map(|b| b as u32)
                .ok_or(Error::NoInverse { element: a })
        })
        .collect()
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A subgroup carried as its own [`FiniteGroup`] plus an embedding into the
/// parent. Subgroup ids follow the sorted order of parent ids.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent_order: usize,
    embedding: Vec<usize>,
    lookup: Vec<Option<u32>>,
    group: FiniteGroup,
}

impl Subgroup {
    /// `members` must be a subgroup of `parent`; it is sorted here.
    pub fn from_members(parent: &FiniteGroup, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut lookup = vec![None; parent.order()];
        for (i, &m) in members.iter().enumerate() {
            lookup[m] = Some(i as u32);
        }
        let m = members.len();
        let mut mul = Vec::with_capacity(m * m);
        for &a in &members {
            for &b in &members {
                let ab = lookup[parent.mul(a, b)].expect("members are closed under multiplication");
                mul.push(ab);
            }
        }
        let identity = lookup[parent.identity()].expect("subgroup contains the identity") as usize;
        let inv = members
            .iter()
            .map(|&a| lookup[parent.inv(a)].expect("subgroup is closed under inverses"))
            .collect();
        let names = members.iter().map(|&a| parent.name(a).to_string()).collect();
        let group = FiniteGroup {
            order: m,
            mul,
            identity,
            inv,
            names,
            source: GroupSource::Table,
        };
        Subgroup {
            parent_order: parent.order(),
            embedding: members,
            lookup,
            group,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    /// Parent ids, indexed by subgroup id.
    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn embed(&self, sub: usize) -> usize {
        self.embedding[sub]
    }

    /// Subgroup id of a parent element, if it lies in the subgroup.
    pub fn local(&self, parent_elem: usize) -> Option<usize> {
        self.lookup.get(parent_elem).copied().flatten().map(|x| x as usize)
    }

    pub fn contains(&self, parent_elem: usize) -> bool {
        self.local(parent_elem).is_some()
    }
}

/// One conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassData {
    pub id: usize,
    pub representative: usize,
    pub members: Vec<usize>,
    pub size: usize,
    /// Sorted centralizer of the representative.
    pub centralizer: Vec<usize>,
}

impl ClassData {
    pub fn centralizer_order(&self) -> usize {
        self.centralizer.len()
    }
}

/// The conjugacy classes of a group in canonical order, with an element-to-class map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    classes: Vec<ClassData>,
    class_of: Vec<usize>,
    identity_class: usize,
    inverse_class: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ClassData> {
        self.classes.iter()
    }

    pub fn as_slice(&self) -> &[ClassData] {
        &self.classes
    }

    pub fn get(&self, id: usize) -> &ClassData {
        &self.classes[id]
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    /// The class of inverses, `C̄`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }

    /// `C_<rep name>`, e.g. `C_1`, `C_r`.
    pub fn label(&self, group: &FiniteGroup, c: usize) -> String {
        format!("C_{}", group.name(self.classes[c].representative))
    }

    /// Accepts a class index, a representative name (`r`), a label (`C_r`),
    /// or the name of any member.
    pub fn resolve(&self, group: &FiniteGroup, text: &str) -> Result<usize> {
        if let Ok(i) = text.parse::<usize>() {
            if i < self.len() {
                return Ok(i);
            }
        }
        let name = text.strip_prefix("C_").unwrap_or(text);
        group
            .element_by_name(name)
            .map(|x| self.class_of(x))
            .ok_or_else(|| Error::InvalidLabel(text.to_string()))
    }
}

impl<'a> IntoIterator for &'a ConjugacyClasses {
    type Item = &'a ClassData;
    type IntoIter = std::slice::Iter<'a, ClassData>;
    fn into_iter(self) -> Self::IntoIter {
        self.classes.iter()
    }
}

/// Conjugacy classes ordered by (size, minimal member id); the
/// representative of each class is its minimal member.
pub fn conjugacy_classes(group: &FiniteGroup) -> ConjugacyClasses {
    let n = group.order();
    let mut assigned = vec![usize::MAX; n];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if assigned[x] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = (0..n).map(|t| group.conjugate(t, x)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            assigned[m] = raw.len();
        }
        raw.push(members);
    }
    raw.sort_by_key(|m| (m.len(), m[0]));
    let mut class_of = vec![0; n];
    let classes: Vec<ClassData> = raw
        .into_iter()
        .enumerate()
        .map(|(id, members)| {
            for &m in &members {
                class_of[m] = id;
            }
            let representative = members[0];
            ClassData {
                id,
                representative,
                size: members.len(),
                centralizer: group.centralizer_members(representative),
                members,
            }
        })
        .collect();
    let inverse_class = classes.iter().map(|c| class_of[group.inv(c.representative)]).collect();
    ConjugacyClasses {
        identity_class: class_of[group.identity()],
        classes,
        class_of,
        inverse_class,
    }
}

/// Free-function form of [`FiniteGroup::commutator`].
pub fn commutator(group: &FiniteGroup, g: usize, h: usize) -> usize {
    group.commutator(g, h)
}

/// Free-function form of [`FiniteGroup::centralizer`].
pub fn centralizer(group: &FiniteGroup, h: usize) -> Subgroup {
    group.centralizer(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perms(degree: usize, gens: &[&str]) -> FiniteGroup {
        let gens: Vec<_> = gens
            .iter()
            .map(|g| Permutation::parse_cycles(g, degree).unwrap())
            .collect();
        FiniteGroup::from_permutations(&gens, DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(perms(2, &["(1 2)"]).order(), 2);
        assert_eq!(perms(3, &["(1 2 3)", "(1 2)"]).order(), 6);
        assert_eq!(perms(5, &["(1 2 3 4 5)", "(1 2 3)"]).order(), 60);
    }

    #[test]
    fn closure_is_breadth_first() {
        let g = perms(3, &["(1 2 3)", "(1 2)"]);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.name(1), "(1 2 3)");
        assert_eq!(g.name(2), "(1 2)");
        assert_eq!(g.name(3), "(1 3 2)");
    }

    #[test]
    fn rejects_non_permutations() {
        let bad = Permutation(vec![0, 0, 2]);
        let err = FiniteGroup::from_permutations(&[bad], 100).unwrap_err();
        assert!(matches!(err, Error::NotAPermutation { index: 0, .. }));
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
    }

    #[test]
    fn element_cap() {
        let err = FiniteGroup::parse("perm 5\n(1 2 3 4 5)\n(1 2)\n", 100).unwrap_err();
        assert_eq!(err, Error::GroupTooLarge { cap: 100 });
    }

    #[test]
    fn cayley_tables() {
        let trivial = FiniteGroup::from_cayley_table(&[vec![0]]).unwrap();
        assert_eq!(trivial.order(), 1);
        let z3 = FiniteGroup::from_cayley_table(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        assert_eq!(z3.order(), 3);
        assert!(z3.is_abelian());
        assert_eq!(z3.exponent(), 3);
    }

    #[test]
    fn cayley_table_errors() {
        assert!(matches!(
            FiniteGroup::from_cayley_table(&[vec![0, 2], vec![1, 0]]),
            Err(Error::NotClosed {
                row: 0,
                col: 1,
                value: 2,
                ..
            })
        ));
        assert_eq!(
            FiniteGroup::from_cayley_table(&[vec![1, 1], vec![1, 1]]),
            Err(Error::NoIdentity)
        );
        assert_eq!(
            FiniteGroup::from_cayley_table(&[vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 2]]),
            Err(Error::NoInverse { element: 1 })
        );
        // identity 0, every element its own inverse, but 1*2 = 1 and 2*1 = 2
        let table = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 2, 0]];
        let err = FiniteGroup::from_cayley_table(&table).unwrap_err();
        let Error::NotAssociative { a, b, c, left, right } = err else {
            panic!("expected NotAssociative, got {err:?}");
        };
        let at = |x: usize, y: usize| table[x][y];
        assert_eq!(left, at(a, at(b, c)));
        assert_eq!(right, at(at(a, b), c));
        assert_ne!(left, right);
    }

    #[test]
    fn s3_classes_and_centralizers() {
        let g = perms(3, &["(1 2 3)", "(1 2)"]);
        let classes = conjugacy_classes(&g);
        assert_eq!(classes.sizes(), vec![1, 2, 3]);
        let reps: Vec<_> = classes.iter().map(|c| c.representative).collect();
        assert_eq!(reps, vec![0, 1, 2]);
        assert_eq!(g.centralizer(0).order(), 6);
        assert_eq!(g.centralizer(1).order(), 3);
        assert_eq!(g.centralizer(2).order(), 2);
        // [r, s] = r^2
        assert_eq!(g.commutator(1, 2), g.mul(1, 1));
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn presentation_independent_class_sizes() {
        let a = conjugacy_classes(&perms(3, &["(1 2 3)", "(1 2)"]));
        let b = conjugacy_classes(&perms(3, &["(1 2)", "(2 3)"]));
        assert_eq!(a.sizes(), b.sizes());
    }

    #[test]
    fn orbit_stabilizer_and_centralizer_consistency() {
        let g = perms(4, &["(1 2 3 4)", "(1 2)"]);
        let classes = conjugacy_classes(&g);
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), g.order());
        for x in g.elements() {
            let c = classes.get(classes.class_of(x));
            assert_eq!(g.centralizer(x).order() * c.size, g.order());
            assert_eq!(g.centralizer(x).order(), c.centralizer_order());
        }
        let e = classes.get(classes.identity_class());
        assert_eq!(e.members, vec![g.identity()]);
        assert_eq!(e.centralizer.len(), g.order());
    }

    #[test]
    fn subgroup_embedding_is_homomorphism() {
        let g = perms(4, &["(1 2 3 4)", "(1 2)"]);
        for h in g.elements() {
            let sub = g.centralizer(h);
            let sg = sub.group();
            for a in sg.elements() {
                for b in sg.elements() {
                    assert_eq!(sub.embed(sg.mul(a, b)), g.mul(sub.embed(a), sub.embed(b)));
                }
            }
        }
    }

    #[test]
    fn parse_text_formats() {
        let g = FiniteGroup::parse("# S3\nperm 3\n(1 2 3)\n(1 2)\n", 100).unwrap();
        assert_eq!(g.order(), 6);
        let z2 = FiniteGroup::parse("table 2\n0 1\n1 0\n", 100).unwrap();
        assert_eq!(z2.order(), 2);
        assert!(matches!(FiniteGroup::parse("blah 3\n", 100), Err(Error::Parse { .. })));
        assert!(matches!(
            FiniteGroup::parse("table 2\n0 1\n", 100),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn cycle_display_round_trip() {
        let p = Permutation::parse_cycles("(1 3)(2 5 4)", 5).unwrap();
        assert_eq!(p.to_string(), "(1 3)(2 5 4)");
        assert_eq!(Permutation::parse_cycles("()", 3).unwrap().to_string(), "()");
    }
}
