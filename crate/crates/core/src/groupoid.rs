//! Finite groupoids given by explicit tables.
//!
//! Objects and arrows are dense identifiers `0..n`. Composition follows the
//! usual functional order: `compose(a, b)` is "`b` then `a`" and is defined
//! exactly when `src(a) == tgt(b)`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GpdError, Result};
use crate::setmap::SetMap;

const NONE: u32 = u32::MAX;

/// A finite groupoid.
///
/// The composition table is stored per hinge object `y`: a dense block
/// indexed by (arrow out of `y`, arrow into `y`). Missing entries are allowed
/// so that hand-written tables can be loaded and then validated.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    n_objects: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    unit: Vec<usize>,
    inv: Vec<usize>,
    ins: Vec<Vec<usize>>,
    outs: Vec<Vec<usize>>,
    in_pos: Vec<usize>,
    out_pos: Vec<usize>,
    table: Vec<Vec<u32>>,
    homs: HashMap<(usize, usize), Vec<usize>>,
}

impl fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroupoid")
            .field("objects", &self.n_objects)
            .field("arrows", &self.src.len())
            .finish()
    }
}

impl FiniteGroupoid {
    fn skeleton(
        n_objects: usize,
        arrows: &[(usize, usize)],
        unit: Vec<usize>,
        inv: Vec<usize>,
    ) -> Result<Self> {
        let m = arrows.len();
        if unit.len() != n_objects {
            return Err(GpdError::Malformed(format!(
                "unit table has {} entries for {} objects",
                unit.len(),
                n_objects
            )));
        }
        if inv.len() != m {
            return Err(GpdError::Malformed(format!(
                "inverse table has {} entries for {} arrows",
                inv.len(),
                m
            )));
        }
        for (a, &(s, t)) in arrows.iter().enumerate() {
            if s >= n_objects || t >= n_objects {
                return Err(GpdError::Malformed(format!(
                    "arrow {a} has endpoint outside 0..{n_objects}"
                )));
            }
        }
        if let Some(&u) = unit.iter().find(|&&u| u >= m) {
            return Err(GpdError::Malformed(format!("unit arrow {u} does not exist")));
        }
        if let Some(&i) = inv.iter().find(|&&i| i >= m) {
            return Err(GpdError::Malformed(format!("inverse arrow {i} does not exist")));
        }
        let src: Vec<usize> = arrows.iter().map(|p| p.0).collect();
        let tgt: Vec<usize> = arrows.iter().map(|p| p.1).collect();
        let mut ins = vec![Vec::new(); n_objects];
        let mut outs = vec![Vec::new(); n_objects];
        let mut in_pos = vec![0; m];
        let mut out_pos = vec![0; m];
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for a in 0..m {
            in_pos[a] = ins[tgt[a]].len();
            ins[tgt[a]].push(a);
            out_pos[a] = outs[src[a]].len();
            outs[src[a]].push(a);
            homs.entry((src[a], tgt[a])).or_default().push(a);
        }
        let table = (0..n_objects)
            .map(|y| vec![NONE; ins[y].len() * outs[y].len()])
            .collect();
        Ok(FiniteGroupoid {
            n_objects,
            src,
            tgt,
            unit,
            inv,
            ins,
            outs,
            in_pos,
            out_pos,
            table,
            homs,
        })
    }

    /// Loads explicit tables. Composition entries `(a, b, c)` mean
    /// `compose(a, b) = c`. Entries for non-composable pairs, conflicting
    /// duplicates and out-of-range identifiers are structural errors; missing
    /// entries and law violations are left for [`FiniteGroupoid::validate`].
    pub fn from_tables(
        n_objects: usize,
        arrows: &[(usize, usize)],
        unit: Vec<usize>,
        inv: Vec<usize>,
        comp: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let mut g = Self::skeleton(n_objects, arrows, unit, inv)?;
        let m = arrows.len();
        for (a, b, c) in comp {
            if a >= m || b >= m || c >= m {
                return Err(GpdError::Malformed(format!(
                    "composition entry ({a}, {b}) = {c} uses an unknown arrow"
                )));
            }
            if g.src[a] != g.tgt[b] {
                return Err(GpdError::Malformed(format!(
                    "composition entry ({a}, {b}) given for a non-composable pair"
                )));
            }
            let slot = g.slot(a, b);
            let cell = &mut g.table[g.src[a]][slot];
            if *cell != NONE && *cell as usize != c {
                return Err(GpdError::Malformed(format!(
                    "conflicting composition entries for ({a}, {b})"
                )));
            }
            *cell = c as u32;
        }
        Ok(g)
    }

    /// Builds a groupoid whose composition is computed by `compose` on every
    /// composable pair. Used by the constructions, which are correct by
    /// design; the closure must return identifiers in range.
    pub fn from_fn(
        n_objects: usize,
        arrows: &[(usize, usize)],
        unit: Vec<usize>,
        inv: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut g = Self::skeleton(n_objects, arrows, unit, inv)
            .expect("construction produced malformed tables");
        for y in 0..n_objects {
            let nin = g.ins[y].len();
            for (i, &a) in g.outs[y].iter().enumerate() {
                for (j, &b) in g.ins[y].iter().enumerate() {
                    let c = compose(a, b);
                    debug_assert!(c < arrows.len());
                    g.table[y][i * nin + j] = c as u32;
                }
            }
        }
        g
    }

    #[inline]
    fn slot(&self, a: usize, b: usize) -> usize {
        let y = self.src[a];
        self.out_pos[a] * self.ins[y].len() + self.in_pos[b]
    }

    pub fn object_count(&self) -> usize {
        self.n_objects
    }

    pub fn arrow_count(&self) -> usize {
        self.src.len()
    }

    #[inline]
    pub fn src(&self, a: usize) -> usize {
        self.src[a]
    }

    #[inline]
    pub fn tgt(&self, a: usize) -> usize {
        self.tgt[a]
    }

    #[inline]
    pub fn unit(&self, x: usize) -> usize {
        self.unit[x]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `compose(a, b)` is "`b` then `a`", or `None` when not composable or
    /// missing from the table.
    #[inline]
    pub fn try_compose(&self, a: usize, b: usize) -> Option<usize> {
        if self.src[a] != self.tgt[b] {
            return None;
        }
        let c = self.table[self.src[a]][self.slot(a, b)];
        (c != NONE).then_some(c as usize)
    }

    /// Composition on a validated groupoid.
    ///
    /// Panics if `src(a) != tgt(b)` or the table entry is missing.
    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> usize {
        match self.try_compose(a, b) {
            Some(c) => c,
            None => panic!("compose({a}, {b}) is undefined"),
        }
    }

    /// The divisor `(x, y) ↦ x y⁻¹` on a same-source pair.
    pub fn divide(&self, x: usize, y: usize) -> usize {
        self.compose(x, self.inv[y])
    }

    /// The transitor `a ↦ (tgt a, src a)`.
    pub fn transitor(&self, a: usize) -> (usize, usize) {
        (self.tgt[a], self.src[a])
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.src[a] == self.tgt[a] && self.unit[self.src[a]] == a
    }

    /// Arrows from `x` to `y`, in increasing id order.
    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.homs.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn arrows_from(&self, x: usize) -> &[usize] {
        &self.outs[x]
    }

    pub fn arrows_to(&self, y: usize) -> &[usize] {
        &self.ins[y]
    }

    pub fn arrows(&self) -> std::ops::Range<usize> {
        0..self.src.len()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.n_objects
    }

    pub fn source_map(&self) -> SetMap {
        SetMap::from_vec_unchecked(self.n_objects, self.src.clone())
    }

    pub fn target_map(&self) -> SetMap {
        SetMap::from_vec_unchecked(self.n_objects, self.tgt.clone())
    }

    pub fn unit_map(&self) -> SetMap {
        SetMap::from_vec_unchecked(self.arrow_count(), self.unit.clone())
    }

    /// Composition entries `(a, b, compose(a, b))` for every composable pair
    /// present in the table, sorted.
    pub fn composition_entries(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in self.arrows() {
            for &b in &self.ins[self.src[a]] {
                if let Some(c) = self.try_compose(a, b) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    /// Returns a copy with one composition entry removed (used for mutation
    /// testing of the validator).
    pub fn without_composition(&self, a: usize, b: usize) -> Self {
        let mut g = self.clone();
        if g.src[a] == g.tgt[b] {
            let slot = g.slot(a, b);
            g.table[g.src[a]][slot] = NONE;
        }
        g
    }

    /// Returns a copy with `inv(a)` overwritten.
    pub fn with_inverse(&self, a: usize, b: usize) -> Self {
        let mut g = self.clone();
        g.inv[a] = b;
        g
    }

    /// Checks every groupoid axiom.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        for x in self.objects() {
            let u = self.unit[x];
            if self.src[u] != x || self.tgt[u] != x {
                v.push(Violation::UnitEndpoints { object: x, unit: u });
            }
        }
        for a in self.arrows() {
            for &b in &self.ins[self.src[a]] {
                match self.try_compose(a, b) {
                    None => v.push(Violation::CompositionUndefined { a, b }),
                    Some(c) => {
                        if self.src[c] != self.src[b] || self.tgt[c] != self.tgt[a] {
                            v.push(Violation::CompositionEndpoints { a, b, c });
                        }
                    }
                }
            }
        }
        for a in self.arrows() {
            let us = self.unit[self.src[a]];
            let ut = self.unit[self.tgt[a]];
            if self.try_compose(a, us) != Some(a) {
                v.push(Violation::RightUnit { arrow: a });
            }
            if self.try_compose(ut, a) != Some(a) {
                v.push(Violation::LeftUnit { arrow: a });
            }
            let i = self.inv[a];
            if self.src[i] != self.tgt[a] || self.tgt[i] != self.src[a] {
                v.push(Violation::InverseEndpoints { arrow: a, inverse: i });
            } else if self.try_compose(i, a) != Some(us) || self.try_compose(a, i) != Some(ut) {
                v.push(Violation::InverseLaw { arrow: a, inverse: i });
            }
        }
        if v.is_empty() {
            'outer: for b in self.arrows() {
                for &a in &self.outs[self.tgt[b]] {
                    let ab = self.compose(a, b);
                    for &c in &self.outs[self.tgt[a]] {
                        let lhs = self.compose(c, ab);
                        let rhs = self.compose(self.compose(c, a), b);
                        if lhs != rhs {
                            v.push(Violation::Associativity { a: c, b: a, c: b });
                            if v.len() >= 16 {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        ValidationReport { violations: v }
    }

    /// Orbits (connected components of the relation "there is an arrow
    /// x → y"), each sorted, listed in order of their least object.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.n_objects];
        let mut out = Vec::new();
        for start in self.objects() {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut orbit = vec![start];
            label[start] = id;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                i += 1;
                for &a in &self.outs[x] {
                    let y = self.tgt[a];
                    if label[y] == usize::MAX {
                        label[y] = id;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Orbit index of every object (orbits numbered as in [`Self::orbits`]).
    pub fn orbit_map(&self) -> SetMap {
        let orbits = self.orbits();
        let mut image = vec![0; self.n_objects];
        for (i, orbit) in orbits.iter().enumerate() {
            for &x in orbit {
                image[x] = i;
            }
        }
        SetMap::from_vec_unchecked(orbits.len(), image)
    }

    /// Vertex group at `x` as a one-object groupoid, together with the list
    /// of parent arrows in the order used for its arrow ids (unit first).
    pub fn vertex_group(&self, x: usize) -> (FiniteGroupoid, Vec<usize>) {
        let mut members: Vec<usize> = self.hom(x, x).to_vec();
        let u = self.unit[x];
        members.retain(|&a| a != u);
        members.insert(0, u);
        let mut index = HashMap::new();
        for (i, &a) in members.iter().enumerate() {
            index.insert(a, i);
        }
        let arrows = vec![(0, 0); members.len()];
        let inv = members.iter().map(|&a| index[&self.inv[a]]).collect();
        let g = FiniteGroupoid::from_fn(1, &arrows, vec![0], inv, |a, b| {
            index[&self.compose(members[a], members[b])]
        });
        (g, members)
    }

    /// Orbits with their least object as representative and the vertex group
    /// there.
    pub fn orbits_and_vertex_groups(&self) -> Vec<OrbitInfo> {
        self.orbits()
            .into_iter()
            .map(|objects| {
                let representative = objects[0];
                let (vertex_group, _) = self.vertex_group(representative);
                OrbitInfo {
                    objects,
                    representative,
                    vertex_group,
                }
            })
            .collect()
    }

    /// Special classes (i)–(vii) in the discrete model.
    pub fn classify(&self) -> GroupoidClass {
        let m = self.arrow_count();
        let n = self.n_objects;
        let mut pairs = std::collections::HashSet::new();
        for a in self.arrows() {
            pairs.insert(self.transitor(a));
        }
        let tau_injective = pairs.len() == m;
        let tau_surjective = pairs.len() == n * n;
        let plurigroup = self.arrows().all(|a| self.src[a] == self.tgt[a]);
        GroupoidClass {
            null: m == n,
            banal: tau_injective && tau_surjective,
            principal: tau_injective,
            transitive: tau_surjective,
            plurigroup,
            group: plurigroup && n == 1,
            discrete_plurigroup: plurigroup,
        }
    }

    /// Whether every hom-set has at most one element (second formulation of
    /// principality, by hom-set scan instead of transitor injectivity).
    pub fn hom_sets_at_most_singletons(&self) -> bool {
        self.homs.values().all(|h| h.len() <= 1)
    }
}

/// One orbit with its chosen representative and vertex group.
#[derive(Debug, Clone)]
pub struct OrbitInfo {
    pub objects: Vec<usize>,
    pub representative: usize,
    pub vertex_group: FiniteGroupoid,
}

/// A violated groupoid axiom instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    UnitEndpoints { object: usize, unit: usize },
    CompositionUndefined { a: usize, b: usize },
    CompositionEndpoints { a: usize, b: usize, c: usize },
    LeftUnit { arrow: usize },
    RightUnit { arrow: usize },
    InverseEndpoints { arrow: usize, inverse: usize },
    InverseLaw { arrow: usize, inverse: usize },
    Associativity { a: usize, b: usize, c: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnitEndpoints { object, unit } => {
                write!(f, "unit law: unit({object}) = {unit} is not a loop at {object}")
            }
            Violation::CompositionUndefined { a, b } => {
                write!(f, "comp undefined for composable pair ({a}, {b})")
            }
            Violation::CompositionEndpoints { a, b, c } => {
                write!(f, "composition endpoints: comp({a}, {b}) = {c} has wrong source or target")
            }
            Violation::LeftUnit { arrow } => write!(f, "unit law: left unit fails at arrow {arrow}"),
            Violation::RightUnit { arrow } => write!(f, "unit law: right unit fails at arrow {arrow}"),
            Violation::InverseEndpoints { arrow, inverse } => {
                write!(f, "inverse law: inv({arrow}) = {inverse} has wrong endpoints")
            }
            Violation::InverseLaw { arrow, inverse } => {
                write!(f, "inverse law: inv({arrow}) = {inverse} does not cancel")
            }
            Violation::Associativity { a, b, c } => {
                write!(f, "associativity fails for ({a}, {b}, {c})")
            }
        }
    }
}

/// Result of [`FiniteGroupoid::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Flags for the special classes of groupoids meaningful in the discrete
/// model. Classes defined through étale or immersion conditions (Galois,
/// regular, Barre, graphoid) carry no finite content and are reported as not
/// applicable by [`GroupoidClass::not_applicable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GroupoidClass {
    pub null: bool,
    pub banal: bool,
    pub principal: bool,
    pub transitive: bool,
    pub plurigroup: bool,
    pub group: bool,
    /// Every finite plurigroup is topologically discrete.
    pub discrete_plurigroup: bool,
}

impl GroupoidClass {
    pub fn not_applicable() -> &'static [&'static str] {
        &["galois", "regular", "barre", "graphoid"]
    }

    /// Names of the flags that hold, in a fixed order.
    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let flags = [
            (self.null, "null"),
            (self.banal, "banal"),
            (self.principal, "principal"),
            (self.transitive, "transitive"),
            (self.plurigroup, "plurigroup"),
            (self.group, "group"),
            (self.discrete_plurigroup, "discrete_plurigroup"),
        ];
        for (on, name) in flags {
            if on {
                out.push(name);
            }
        }
        out
    }

    /// The implication lattice between the flags.
    pub fn is_consistent(&self) -> bool {
        (!self.null || self.principal)
            && (!self.banal || (self.principal && self.transitive))
            && (!self.group || self.plurigroup)
            && (self.discrete_plurigroup == self.plurigroup)
    }
}

/// A groupoid together with a surjection of its base whose fibres are its
/// orbits.
#[derive(Debug, Clone)]
pub struct OrbitalAtlas {
    pub groupoid: std::sync::Arc<FiniteGroupoid>,
    pub quotient: SetMap,
}

impl OrbitalAtlas {
    /// Checks that `quotient` is a surjection whose fibres are exactly the
    /// orbits.
    pub fn new(groupoid: std::sync::Arc<FiniteGroupoid>, quotient: SetMap) -> Result<Self> {
        if quotient.domain() != groupoid.object_count() {
            return Err(GpdError::Malformed("atlas quotient must be defined on the base".into()));
        }
        if !quotient.is_surjective() {
            return Err(GpdError::Malformed("atlas quotient is not surjective".into()));
        }
        let mut fibres = quotient.fibres();
        fibres.sort();
        let mut orbits = groupoid.orbits();
        orbits.sort();
        if fibres != orbits {
            return Err(GpdError::Malformed("atlas fibres are not the orbits".into()));
        }
        Ok(OrbitalAtlas { groupoid, quotient })
    }

    /// The atlas given by the orbit map itself.
    pub fn canonical(groupoid: std::sync::Arc<FiniteGroupoid>) -> Self {
        let quotient = groupoid.orbit_map();
        OrbitalAtlas { groupoid, quotient }
    }

    pub fn orbit_space_size(&self) -> usize {
        self.quotient.codomain()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    #[test]
    fn null_groupoid_validates() {
        assert!(standard::null(3).validate().is_ok());
    }

    #[test]
    fn deleted_composition_is_reported() {
        let g = standard::pair(2);
        let (a, b, _) = g.composition_entries()[0];
        let report = g.without_composition(a, b).validate();
        assert!(!report.is_ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.to_string().contains("comp undefined for composable pair")));
    }

    #[test]
    fn corrupted_inverse_is_reported() {
        let g = standard::cyclic(4);
        // inverse of the generator 1 is 3; setting it to 1 breaks 1+1 = 0.
        assert_eq!(g.compose(1, 1), 2);
        let bad = g.with_inverse(1, 1);
        let report = bad.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| v.to_string().contains("inverse law")));
    }

    #[test]
    fn structural_errors() {
        assert!(FiniteGroupoid::from_tables(1, &[(0, 0)], vec![0], vec![0], [(0, 0, 1)]).is_err());
        assert!(FiniteGroupoid::from_tables(2, &[(0, 0), (1, 1)], vec![0, 1], vec![0, 1], [(0, 1, 0)]).is_err());
        assert!(FiniteGroupoid::from_tables(1, &[(0, 0)], vec![0], vec![0], [(0, 0, 0), (0, 0, 0)]).is_ok());
    }

    #[test]
    fn classify_examples() {
        let c = standard::null(2).classify();
        assert_eq!(c.names(), ["null", "principal", "plurigroup", "discrete_plurigroup"]);
        let c = standard::pair(2).classify();
        assert_eq!(c.names(), ["banal", "principal", "transitive"]);
        let c = standard::cyclic(3).classify();
        assert_eq!(c.names(), ["transitive", "plurigroup", "group", "discrete_plurigroup"]);
    }

    #[test]
    fn orbit_examples() {
        let p3 = standard::pair(3);
        let info = p3.orbits_and_vertex_groups();
        assert_eq!(info.len(), 1);
        assert_eq!(info[0].objects, vec![0, 1, 2]);
        assert_eq!(info[0].vertex_group.arrow_count(), 1);

        let z2 = standard::cyclic(2);
        let info = z2.orbits_and_vertex_groups();
        assert_eq!(info.len(), 1);
        assert_eq!(info[0].vertex_group.arrow_count(), 2);

        let u = standard::disjoint_union(&standard::cyclic(2), &standard::pair(2));
        let info = u.orbits_and_vertex_groups();
        assert_eq!(info.len(), 2);
        assert_eq!(info[0].vertex_group.arrow_count(), 2);
        assert_eq!(info[1].vertex_group.arrow_count(), 1);
    }

    #[test]
    fn atlas_fibres_must_be_orbits() {
        let g = std::sync::Arc::new(standard::pair(2));
        assert!(OrbitalAtlas::new(g.clone(), SetMap::new(1, vec![0, 0]).unwrap()).is_ok());
        assert!(OrbitalAtlas::new(g, SetMap::new(2, vec![0, 1]).unwrap()).is_err());
    }
}
