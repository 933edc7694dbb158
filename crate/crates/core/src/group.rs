//! Finite groups as multiplication tables.
//!
//! Composition convention (used everywhere in this crate): products are read
//! left to right, so for permutations `(g*h)(i) = h(g(i))`: apply `g`, then
//! `h`. Word maps multiply their letters in the same order.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Default cap on the closure size in [`FiniteGroup::from_permutations`].
pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

/// Groups up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_ORDER: usize = 24;

const SAMPLED_TRIPLES: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generators act on different numbers of points")]
    DegreeMismatch,
    #[error("closure exceeds the bound of {0} elements")]
    ClosureBound(usize),
    #[error("group file line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("unknown built-in group `{0}`")]
    UnknownBuiltin(String),
}

/// A permutation of `{0, .., m-1}`; displayed and parsed 1-based in cycle
/// notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(GroupError::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Self(images))
    }

    /// Builds a permutation of `{1..degree}` from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &point) in cycle.iter().enumerate() {
                if point == 0 || point > degree {
                    return Err(GroupError::InvalidPermutation(format!("point {point} outside 1..{degree}")));
                }
                if std::mem::replace(&mut touched[point - 1], true) {
                    return Err(GroupError::InvalidPermutation(format!("point {point} repeated")));
                }
                images[point - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Self(images))
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `(1,2)`; `()` is the
    /// identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self, GroupError> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| GroupError::InvalidPermutation(format!("bad cycle notation `{text}`")))?;
            let points = body
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| GroupError::InvalidPermutation(format!("`{text}`: {e}")))?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = body.1.trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.0[point]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    names: Vec<String>,
    table: Vec<u32>,
    inverses: Vec<usize>,
    identity: usize,
    permutations: Option<Vec<Permutation>>,
}

impl FiniteGroup {
    /// Closes `generators` under composition by breadth-first products.
    /// Elements are numbered in discovery order with the identity first;
    /// element `g` is expanded by `g*s` for each generator `s` in order.
    pub fn from_permutations(name: &str, generators: &[Permutation], bound: usize) -> Result<Self, GroupError> {
        let degree = generators.first().map_or(0, Permutation::degree);
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch);
        }
        let mut elems = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(elems[0].clone(), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for s in generators {
                let h = elems[g].then(s);
                if !index.contains_key(&h) {
                    if elems.len() == bound {
                        return Err(GroupError::ClosureBound(bound));
                    }
                    index.insert(h.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(h);
                }
            }
        }
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index[&a.then(b)] as u32);
            }
        }
        let mut group = Self::from_table_unchecked(name, table, n)?;
        group.names = elems.iter().map(|p| p.to_string()).collect();
        group.permutations = Some(elems);
        Ok(group)
    }

    /// Builds a group from a row-major table, validating the group axioms.
    pub fn from_table(name: &str, table: Vec<u32>, order: usize) -> Result<Self, GroupError> {
        let group = Self::from_table_unchecked(name, table, order)?;
        group.check_associativity()?;
        Ok(group)
    }

    fn from_table_unchecked(name: &str, table: Vec<u32>, order: usize) -> Result<Self, GroupError> {
        if order == 0 || table.len() != order * order {
            return Err(GroupError::NotAGroup("table is not square and non-empty".into()));
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(GroupError::NotAGroup("entry out of range".into()));
        }
        let mut seen = vec![0usize; order];
        for (round, i) in (0..order).enumerate() {
            for j in 0..order {
                let v = table[i * order + j] as usize;
                if seen[v] == round + 1 {
                    return Err(GroupError::NotAGroup(format!("row {i} repeats element {v}")));
                }
                seen[v] = round + 1;
            }
        }
        let mut seen = vec![0usize; order];
        for j in 0..order {
            for i in 0..order {
                let v = table[i * order + j] as usize;
                if seen[v] == j + 1 {
                    return Err(GroupError::NotAGroup(format!("column {j} repeats element {v}")));
                }
                seen[v] = j + 1;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|h| table[e * order + h] as usize == h && table[h * order + e] as usize == h))
            .ok_or_else(|| GroupError::NotAGroup("no identity element".into()))?;
        let mut inverses = vec![usize::MAX; order];
        for g in 0..order {
            let inv = (0..order)
                .find(|&h| table[g * order + h] as usize == identity)
                .expect("rows are permutations");
            if table[inv * order + g] as usize != identity {
                return Err(GroupError::NotAGroup(format!("element {g} has no two-sided inverse")));
            }
            inverses[g] = inv;
        }
        Ok(Self {
            name: name.to_string(),
            order,
            names: (0..order).map(|i| i.to_string()).collect(),
            table,
            inverses,
            identity,
            permutations: None,
        })
    }

    fn check_associativity(&self) -> Result<(), GroupError> {
        let n = self.order;
        let bad = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(GroupError::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(GroupError::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn permutations(&self) -> Option<&[Permutation]> {
        self.permutations.as_deref()
    }

    /// Index of a permutation, for groups built from permutations.
    pub fn find(&self, p: &Permutation) -> Option<usize> {
        self.permutations.as_ref()?.iter().position(|q| q == p)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Same table, i.e. identical element numbering.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        ConjugacyClasses::of(self)
    }

    /// Group file: `group <name> order <N>` followed by `N` rows of `N`
    /// whitespace separated indices (row `g` lists `g*h`).
    pub fn parse_file(text: &str) -> Result<Self, GroupError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or(GroupError::Format { line: 1, msg: "empty file".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (name, order) = match fields.as_slice() {
            ["group", name, "order", n] => (
                *name,
                n.parse::<usize>().map_err(|e| GroupError::Format { line: hline + 1, msg: e.to_string() })?,
            ),
            _ => {
                return Err(GroupError::Format { line: hline + 1, msg: "expected `group <name> order <N>`".into() })
            }
        };
        let mut table = Vec::with_capacity(order * order);
        let mut rows = 0;
        for (i, line) in lines {
            if rows == order {
                return Err(GroupError::Format { line: i + 1, msg: "more rows than the declared order".into() });
            }
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| GroupError::Format { line: i + 1, msg: e.to_string() })?;
            if row.len() != order {
                return Err(GroupError::Format { line: i + 1, msg: format!("expected {order} entries, found {}", row.len()) });
            }
            table.extend(row);
            rows += 1;
        }
        if rows != order {
            return Err(GroupError::Format { line: hline + 1, msg: format!("expected {order} rows, found {rows}") });
        }
        Self::from_table(name, table, order)
    }

    pub fn to_file(&self) -> String {
        let mut out = format!("group {} order {}\n", self.name, self.order);
        for row in self.table.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Conjugacy-class data for a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    pub class_of: Vec<usize>,
    /// Smallest element index in each class; classes are ordered by it.
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
    pub centralizer_sizes: Vec<usize>,
    /// Class of `g^2` for `g` in each class.
    pub square_class: Vec<usize>,
    /// Class of `g^-1` for `g` in each class.
    pub inverse_class: Vec<usize>,
    group_order: usize,
}

impl ConjugacyClasses {
    pub fn of(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut class_of = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let k = representatives.len();
            let mut size = 0;
            for x in 0..n {
                let h = group.mul(group.mul(group.inverse(x), g), x);
                if class_of[h] == usize::MAX {
                    class_of[h] = k;
                    size += 1;
                }
            }
            representatives.push(g);
            sizes.push(size);
        }
        let centralizer_sizes = sizes.iter().map(|s| n / s).collect();
        let square_class = representatives.iter().map(|&g| class_of[group.mul(g, g)]).collect();
        let inverse_class = representatives.iter().map(|&g| class_of[group.inverse(g)]).collect();
        Self { class_of, representatives, sizes, centralizer_sizes, square_class, inverse_class, group_order: n }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 17] = [
    "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12", "S3", "S4", "D4", "D5", "Q8", "A4",
];

/// Permutation generators of a built-in group.
pub fn builtin_generators(name: &str) -> Result<Vec<Permutation>, GroupError> {
    let p = |m: usize, cycles: &[&[usize]]| Permutation::from_cycles(m, cycles).expect("valid built-in cycles");
    let gens = match name {
        "S3" => vec![p(3, &[&[1, 2]]), p(3, &[&[1, 2, 3]])],
        "S4" => vec![p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3, 4]])],
        "D4" => vec![p(4, &[&[1, 2, 3, 4]]), p(4, &[&[1, 3]])],
        "D5" => vec![p(5, &[&[1, 2, 3, 4, 5]]), p(5, &[&[2, 5], &[3, 4]])],
        "A4" => vec![p(4, &[&[1, 2, 3]]), p(4, &[&[2, 3, 4]])],
        // left-regular action on 1,-1,i,-i,j,-j,k,-k (points 1..8) of i and j
        "Q8" => vec![p(8, &[&[1, 3, 2, 4], &[5, 7, 6, 8]]), p(8, &[&[1, 5, 2, 6], &[3, 8, 4, 7]])],
        _ => match name.strip_prefix('Z').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if (2..=12).contains(&n) => {
                let cycle: Vec<usize> = (1..=n).collect();
                vec![p(n, &[&cycle])]
            }
            _ => return Err(GroupError::UnknownBuiltin(name.to_string())),
        },
    };
    Ok(gens)
}

pub fn builtin(name: &str) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::from_permutations(name, &builtin_generators(name)?, DEFAULT_CLOSURE_BOUND)
}

/// Shipped group file for a built-in group.
pub fn builtin_group_file(name: &str) -> Option<&'static str> {
    Some(match name {
        "Z2" => include_str!("../data/groups/Z2.grp"),
        "Z3" => include_str!("../data/groups/Z3.grp"),
        "Z4" => include_str!("../data/groups/Z4.grp"),
        "Z5" => include_str!("../data/groups/Z5.grp"),
        "Z6" => include_str!("../data/groups/Z6.grp"),
        "Z7" => include_str!("../data/groups/Z7.grp"),
        "Z8" => include_str!("../data/groups/Z8.grp"),
        "Z9" => include_str!("../data/groups/Z9.grp"),
        "Z10" => include_str!("../data/groups/Z10.grp"),
        "Z11" => include_str!("../data/groups/Z11.grp"),
        "Z12" => include_str!("../data/groups/Z12.grp"),
        "S3" => include_str!("../data/groups/S3.grp"),
        "S4" => include_str!("../data/groups/S4.grp"),
        "D4" => include_str!("../data/groups/D4.grp"),
        "D5" => include_str!("../data/groups/D5.grp"),
        "Q8" => include_str!("../data/groups/Q8.grp"),
        "A4" => include_str!("../data/groups/A4.grp"),
        _ => return None,
    })
}
