use rustc_hash::FxHashMap;

use super::perm::{is_solvable, Perm, PermGroup};
use super::{ElemId, TransitionMonoid};
use crate::automata::State;
use crate::error::Result;

/// The maximal subgroup `H_e` of the monoid at an idempotent `e`: the unit
/// group of `e·M·e`. Its elements act faithfully on the support
/// `S = Fix(e)`.
#[derive(Debug, Clone)]
pub struct MaximalSubgroup {
    pub idempotent: ElemId,
    /// Monoid elements of the group, in increasing id order.
    pub members: Vec<ElemId>,
    pub support: Vec<State>,
    /// `members[i]` restricted to `support`, relabelled to `0..|S|`.
    pub group: PermGroup,
    /// `members[position[i]]` restricts to `group.element(i)`.
    position: Vec<usize>,
}

impl MaximalSubgroup {
    /// The monoid element whose restriction is `group.element(i)`.
    pub fn member_of(&self, i: usize) -> ElemId {
        self.members[self.position[i]]
    }
}

/// The fixed points of `e`. For the identity of a group of
/// transformations this is the set on which every member acts as a
/// permutation.
pub fn restriction_support(m: &TransitionMonoid, e: ElemId) -> Vec<State> {
    (0..m.degree()).filter(|&q| m.apply(e, q) == q).collect()
}

/// `(image, kernel)` of a transformation; the kernel is given by labelling
/// each state with the first state sharing its image.
fn image_kernel(m: &TransitionMonoid, s: ElemId) -> (Vec<State>, Vec<State>) {
    let n = m.degree();
    let mut first: FxHashMap<State, State> = FxHashMap::default();
    let kernel = (0..n).map(|q| *first.entry(m.apply(s, q)).or_insert(q)).collect();
    let mut image: Vec<State> = first.into_keys().collect();
    image.sort_unstable();
    (image, kernel)
}

/// Every maximal subgroup, one per idempotent, in idempotent id order.
///
/// `s` lies in `H_e` exactly when it has the image and the kernel of `e`:
/// then `e·s·e = s` and `s` permutes `Fix(e)`, so one of its powers is `e`.
pub fn maximal_subgroups(m: &TransitionMonoid) -> Vec<MaximalSubgroup> {
    let idempotents: Vec<ElemId> = m.elements().filter(|&s| m.is_idempotent(s)).collect();
    let mut slot: FxHashMap<(Vec<State>, Vec<State>), usize> = FxHashMap::default();
    for (i, &e) in idempotents.iter().enumerate() {
        slot.insert(image_kernel(m, e), i);
    }
    let mut members: Vec<Vec<ElemId>> = vec![Vec::new(); idempotents.len()];
    for s in m.elements() {
        if let Some(&i) = slot.get(&image_kernel(m, s)) {
            members[i].push(s);
        }
    }
    idempotents
        .into_iter()
        .zip(members)
        .map(|(e, members)| {
            let support = restriction_support(m, e);
            let mut pos: Vec<usize> = vec![usize::MAX; m.degree()];
            for (i, &q) in support.iter().enumerate() {
                pos[q] = i;
            }
            let perms: Vec<Perm> =
                members.iter().map(|&s| support.iter().map(|&q| pos[m.apply(s, q)]).collect()).collect();
            let group =
                PermGroup::from_elements(support.len(), perms.clone()).expect("an H-class at an idempotent is a group");
            // from_elements moves the identity to the front
            let position =
                group.elements().iter().map(|g| perms.iter().position(|p| p == g).expect("same element set")).collect();
            MaximalSubgroup { idempotent: e, members, support, group, position }
        })
        .collect()
}

/// Outcome of checking every maximal subgroup for solvability.
#[derive(Debug, Clone)]
pub struct GroupSurvey {
    pub solvable: bool,
    /// The first unsolvable maximal subgroup, by idempotent id.
    pub unsolvable: Option<MaximalSubgroup>,
    /// Order of the largest maximal subgroup.
    pub largest_group: usize,
}

/// Every group in the monoid embeds in some maximal subgroup, so all groups
/// are solvable iff all maximal subgroups are.
pub fn all_monoid_groups_solvable(m: &TransitionMonoid) -> Result<GroupSurvey> {
    let mut cache: FxHashMap<Vec<Perm>, bool> = FxHashMap::default();
    let mut largest = 1;
    for h in maximal_subgroups(m) {
        largest = largest.max(h.group.order());
        if h.group.order() == 1 {
            continue;
        }
        let mut key: Vec<Perm> = h.group.elements().to_vec();
        key.sort_unstable();
        let solvable = *cache.entry(key).or_insert_with(|| is_solvable(&h.group));
        if !solvable {
            return Ok(GroupSurvey { solvable: false, unsolvable: Some(h), largest_group: largest });
        }
    }
    Ok(GroupSurvey { solvable: true, unsolvable: None, largest_group: largest })
}
