//! Finite subgroups of `PGL_3` by exact closure.
//!
//! Groups are stored as explicit element lists in a single cyclotomic field.
//! Closure is a breadth-first product walk deduplicated through canonical
//! lifts, so element counts, order histograms and subgroup searches are all
//! exact and deterministic.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{lcm_u32, CycloField};
use crate::projlinear::ProjElement;
use crate::{Error, Result};

/// Default cap on closure size; the catalog groups stay well below it.
pub const DEFAULT_CLOSURE_CAP: usize = 400;

/// Structural summary of a finite subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub order: usize,
    /// Element order -> number of elements of that order.
    pub order_histogram: BTreeMap<u32, usize>,
    pub abelian: bool,
}

/// A finite subgroup of `PGL_3` with a full element list.
#[derive(Clone)]
pub struct FiniteSubgroup {
    field: Arc<CycloField>,
    generators: Vec<ProjElement>,
    elements: Vec<ProjElement>,
}

impl FiniteSubgroup {
    /// Closes a generating set under products, failing once more than `cap`
    /// elements appear. Generators over different conductors are embedded
    /// into their least common multiple.
    pub fn closure(generators: &[ProjElement], cap: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::BadParameters(
                "closure needs at least one generator".into(),
            ));
        }
        let m = generators
            .iter()
            .fold(1u32, |acc, g| lcm_u32(acc, g.conductor()));
        let gens: Vec<ProjElement> = generators
            .iter()
            .map(|g| g.embed(m))
            .collect::<Result<Vec<_>>>()?;
        let field = CycloField::new(m);
        let identity = ProjElement::identity(&field);
        let mut elements = vec![identity.clone()];
        let mut seen: HashSet<ProjElement> = elements.iter().cloned().collect();
        let mut queue: VecDeque<ProjElement> = VecDeque::from([identity]);
        while let Some(g) = queue.pop_front() {
            for gen in &gens {
                let h = g.mul(gen)?;
                if seen.insert(h.clone()) {
                    if elements.len() >= cap {
                        return Err(Error::ClosureExceedsCap(cap));
                    }
                    elements.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(FiniteSubgroup {
            field,
            generators: gens,
            elements,
        })
    }

    /// Wraps an element list that is already known to be a group. The first
    /// element must be the identity.
    fn from_parts(
        field: Arc<CycloField>,
        generators: Vec<ProjElement>,
        elements: Vec<ProjElement>,
    ) -> Self {
        FiniteSubgroup {
            field,
            generators,
            elements,
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[ProjElement] {
        &self.generators
    }

    /// Elements in deterministic discovery order, identity first.
    pub fn elements(&self) -> &[ProjElement] {
        &self.elements
    }

    /// Exact membership test.
    pub fn contains(&self, g: &ProjElement) -> bool {
        if self.conductor() % g.conductor() == 0 {
            let lifted = g.embed(self.conductor()).expect("divisor embeds");
            self.elements.iter().any(|h| *h == lifted)
        } else {
            let m = lcm_u32(self.conductor(), g.conductor());
            let lifted = match g.embed(m) {
                Ok(x) => x,
                Err(_) => return false,
            };
            self.elements
                .iter()
                .any(|h| h.embed(m).map_or(false, |hh| hh == lifted))
        }
    }

    /// True when every element of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &FiniteSubgroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    /// Order histogram and abelianness.
    pub fn fingerprint(&self) -> Result<GroupFingerprint> {
        let bound = self.order() as u32;
        let mut order_histogram = BTreeMap::new();
        for g in &self.elements {
            let ord = g.proj_order(bound)?;
            *order_histogram.entry(ord).or_insert(0) += 1;
        }
        let mut abelian = true;
        'outer: for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if a.mul(b)? != b.mul(a)? {
                    abelian = false;
                    break 'outer;
                }
            }
        }
        Ok(GroupFingerprint {
            order: self.order(),
            order_histogram,
            abelian,
        })
    }

    /// The Galois image: entrywise conjugation of every element.
    pub fn sigma_image(&self) -> Self {
        FiniteSubgroup::from_parts(
            Arc::clone(&self.field),
            self.generators.iter().map(ProjElement::galois_sigma).collect(),
            self.elements.iter().map(ProjElement::galois_sigma).collect(),
        )
    }

    /// True when the group equals its Galois image as a set.
    pub fn is_sigma_stable(&self) -> bool {
        let image = self.sigma_image();
        image.order() == self.order() && image.is_subgroup_of(self)
    }

    /// The conjugate group `psi^-1 * G * psi`.
    pub fn conjugate_by(&self, psi: &ProjElement) -> Result<Self> {
        let m = lcm_u32(self.conductor(), psi.conductor());
        let psi = psi.embed(m)?;
        let inv = psi.inverse();
        let map = |g: &ProjElement| -> Result<ProjElement> {
            inv.mul(&g.embed(m)?)?.mul(&psi)
        };
        let generators = self
            .generators
            .iter()
            .map(&map)
            .collect::<Result<Vec<_>>>()?;
        let elements = self
            .elements
            .iter()
            .map(&map)
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteSubgroup::from_parts(
            CycloField::new(m),
            generators,
            elements,
        ))
    }

    /// Searches the ambient group for `psi` with `psi^-1 * H * psi = K` as
    /// sets. Both arguments must be subgroups of the ambient group; the
    /// first match in element order is returned.
    pub fn subgroup_conjugacy_search(
        h: &FiniteSubgroup,
        k: &FiniteSubgroup,
        ambient: &FiniteSubgroup,
    ) -> Result<Option<ProjElement>> {
        if !h.is_subgroup_of(ambient) || !k.is_subgroup_of(ambient) {
            return Err(Error::NotSubgroupOfAmbient);
        }
        if h.order() != k.order() {
            return Ok(None);
        }
        let m = ambient.conductor();
        let k_set: HashSet<ProjElement> = k
            .elements
            .iter()
            .map(|g| g.embed(m))
            .collect::<Result<HashSet<_>>>()?;
        let h_elems: Vec<ProjElement> = h
            .elements
            .iter()
            .map(|g| g.embed(m))
            .collect::<Result<Vec<_>>>()?;
        for psi in &ambient.elements {
            let inv = psi.inverse();
            let mut all_in = true;
            for g in &h_elems {
                let conj = inv.mul(g)?.mul(psi)?;
                if !k_set.contains(&conj) {
                    all_in = false;
                    break;
                }
            }
            if all_in {
                return Ok(Some(psi.clone()));
            }
        }
        Ok(None)
    }

    /// The normalizer of `h` inside the ambient group.
    pub fn normalizer_in(h: &FiniteSubgroup, ambient: &FiniteSubgroup) -> Result<FiniteSubgroup> {
        if !h.is_subgroup_of(ambient) {
            return Err(Error::NotSubgroupOfAmbient);
        }
        let m = ambient.conductor();
        let h_set: HashSet<ProjElement> = h
            .elements
            .iter()
            .map(|g| g.embed(m))
            .collect::<Result<HashSet<_>>>()?;
        let mut elements = Vec::new();
        for psi in &ambient.elements {
            let inv = psi.inverse();
            let mut normalizes = true;
            for g in &h_set {
                let conj = inv.mul(g)?.mul(psi)?;
                if !h_set.contains(&conj) {
                    normalizes = false;
                    break;
                }
            }
            if normalizes {
                elements.push(psi.clone());
            }
        }
        let generators = elements.clone();
        Ok(FiniteSubgroup::from_parts(
            Arc::clone(&ambient.field),
            generators,
            elements,
        ))
    }

    /// Finds a commuting pair of order-3 elements that generates a subgroup
    /// of order 9, scanning elements in deterministic order.
    pub fn find_subgroup_c3xc3(&self) -> Result<Option<(ProjElement, ProjElement)>> {
        let bound = self.order() as u32;
        let mut order3 = Vec::new();
        for g in &self.elements {
            if g.proj_order(bound)? == 3 {
                order3.push(g.clone());
            }
        }
        for (i, a) in order3.iter().enumerate() {
            for b in &order3[i + 1..] {
                if a.mul(b)? != b.mul(a)? {
                    continue;
                }
                let sub = FiniteSubgroup::closure(&[a.clone(), b.clone()], 10)?;
                if sub.order() == 9 {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
        Ok(None)
    }
}

impl std::fmt::Debug for FiniteSubgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FiniteSubgroup(N={}, order={}, generators={})",
            self.conductor(),
            self.order(),
            self.generators.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycloElement;
    use crate::projlinear::Matrix3;

    fn fld(n: u32) -> Arc<CycloField> {
        CycloField::new(n)
    }

    fn diag_unit(n: u32, a: i64, b: i64) -> ProjElement {
        let f = fld(n);
        let m = Matrix3::diag(
            CycloElement::one(&f),
            CycloElement::zeta_pow(&f, a),
            CycloElement::zeta_pow(&f, b),
        )
        .unwrap();
        ProjElement::new(m).unwrap()
    }

    fn perm_yzx(n: u32) -> ProjElement {
        // The map [X:Y:Z] -> [Y:Z:X].
        let m = Matrix3::from_int_rows(&fld(n), [[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
        ProjElement::new(m).unwrap()
    }

    fn swap_yz(n: u32) -> ProjElement {
        // The map [X:Y:Z] -> [X:Z:Y].
        let m = Matrix3::from_int_rows(&fld(n), [[1, 0, 0], [0, 0, 1], [0, 1, 0]]);
        ProjElement::new(m).unwrap()
    }

    fn dihedral10() -> FiniteSubgroup {
        FiniteSubgroup::closure(&[diag_unit(5, 1, 4), swap_yz(5)], DEFAULT_CLOSURE_CAP).unwrap()
    }

    #[test]
    fn cyclic_closure() {
        let g = FiniteSubgroup::closure(&[diag_unit(12, 1, 11)], 50).unwrap();
        assert_eq!(g.order(), 12);
        let fp = g.fingerprint().unwrap();
        assert!(fp.abelian);
        assert_eq!(fp.order_histogram[&12], 4);
        assert_eq!(fp.order_histogram[&1], 1);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let err = FiniteSubgroup::closure(&[diag_unit(12, 1, 11)], 5).unwrap_err();
        assert_eq!(err, Error::ClosureExceedsCap(5));
    }

    #[test]
    fn diagonal_and_cycle_generate_c3xc3() {
        // In PGL_3 the diagonal diag(1, z3, z3^2) and the coordinate cycle
        // commute, so together they close to an elementary abelian group of
        // order 9.
        let s = diag_unit(3, 1, 2);
        let t = perm_yzx(3);
        assert_eq!(s.mul(&t).unwrap(), t.mul(&s).unwrap());
        let g = FiniteSubgroup::closure(&[s, t], 50).unwrap();
        assert_eq!(g.order(), 9);
        let fp = g.fingerprint().unwrap();
        assert!(fp.abelian);
        assert_eq!(fp.order_histogram[&3], 8);
        let pair = g.find_subgroup_c3xc3().unwrap();
        assert!(pair.is_some());
        let (a, b) = pair.unwrap();
        let sub = FiniteSubgroup::closure(&[a, b], 10).unwrap();
        assert_eq!(sub.order(), 9);
    }

    #[test]
    fn dihedral_group_of_order_ten() {
        let g = dihedral10();
        assert_eq!(g.order(), 10);
        let fp = g.fingerprint().unwrap();
        assert!(!fp.abelian);
        let expect: BTreeMap<u32, usize> = [(1, 1), (2, 5), (5, 4)].into_iter().collect();
        assert_eq!(fp.order_histogram, expect);
        // Dihedral presentation: the reflection inverts the rotation.
        let a = diag_unit(5, 1, 4);
        let b = swap_yz(5);
        let bab = b.mul(&a).unwrap().mul(&b).unwrap();
        assert_eq!(bab, a.inverse());
        // No order-9 elementary abelian subgroup exists here.
        assert!(g.find_subgroup_c3xc3().unwrap().is_none());
    }

    #[test]
    fn sigma_image_of_dihedral_is_itself() {
        let g = dihedral10();
        let image = g.sigma_image();
        assert_eq!(image.order(), g.order());
        assert!(image.is_subgroup_of(&g));
        assert!(g.is_subgroup_of(&image));
        assert!(g.is_sigma_stable());
    }

    #[test]
    fn membership_across_conductors() {
        let g = dihedral10();
        // The same rotation written over conductor 20 is still recognized.
        let rot = diag_unit(20, 4, 16);
        assert!(g.contains(&rot));
        let outside = diag_unit(20, 1, 19);
        assert!(!g.contains(&outside));
    }

    #[test]
    fn conjugacy_search_in_dihedral_ambient() {
        let ambient = dihedral10();
        let a = diag_unit(5, 1, 4);
        let b = swap_yz(5);
        let rot = FiniteSubgroup::closure(&[a.clone()], 20).unwrap();
        let refl1 = FiniteSubgroup::closure(&[b.clone()], 20).unwrap();
        let other_refl = a.mul(&b).unwrap().mul(&a.inverse()).unwrap();
        let refl2 = FiniteSubgroup::closure(&[other_refl], 20).unwrap();

        // A subgroup is conjugate to itself via the identity, found first.
        let psi = FiniteSubgroup::subgroup_conjugacy_search(&rot, &rot, &ambient)
            .unwrap()
            .unwrap();
        assert!(psi.is_identity());

        // The two reflection subgroups are conjugate by a rotation.
        let psi = FiniteSubgroup::subgroup_conjugacy_search(&refl1, &refl2, &ambient)
            .unwrap()
            .unwrap();
        let moved = refl1.conjugate_by(&psi).unwrap();
        assert!(moved.is_subgroup_of(&refl2) && refl2.is_subgroup_of(&moved));

        // Order mismatch short-circuits to None.
        assert!(
            FiniteSubgroup::subgroup_conjugacy_search(&rot, &refl1, &ambient)
                .unwrap()
                .is_none()
        );

        // Arguments outside the ambient group are rejected.
        let foreign = FiniteSubgroup::closure(&[diag_unit(7, 1, 6)], 20).unwrap();
        assert_eq!(
            FiniteSubgroup::subgroup_conjugacy_search(&foreign, &rot, &ambient).unwrap_err(),
            Error::NotSubgroupOfAmbient
        );
    }

    #[test]
    fn normalizers_in_dihedral_ambient() {
        let ambient = dihedral10();
        let rot = FiniteSubgroup::closure(&[diag_unit(5, 1, 4)], 20).unwrap();
        let norm = FiniteSubgroup::normalizer_in(&rot, &ambient).unwrap();
        assert_eq!(norm.order(), 10);
        let refl = FiniteSubgroup::closure(&[swap_yz(5)], 20).unwrap();
        let norm = FiniteSubgroup::normalizer_in(&refl, &ambient).unwrap();
        assert_eq!(norm.order(), 2);
        // The normalizer of the trivial group is everything.
        let trivial = FiniteSubgroup::closure(&[ProjElement::identity(&fld(5))], 2).unwrap();
        let norm = FiniteSubgroup::normalizer_in(&trivial, &ambient).unwrap();
        assert_eq!(norm.order(), 10);
    }

    #[test]
    fn closure_requires_generators() {
        assert!(matches!(
            FiniteSubgroup::closure(&[], 10),
            Err(Error::BadParameters(_))
        ));
    }
}
