//! Standard constructors: null, pair (banal), cyclic and symmetric groups,
//! equivalence relations, action groupoids, disjoint unions and products.

use crate::error::{GpdError, Result};
use crate::groupoid::FiniteGroupoid;

/// The null groupoid on `k` objects: units only.
pub fn null(k: usize) -> FiniteGroupoid {
    let arrows: Vec<(usize, usize)> = (0..k).map(|x| (x, x)).collect();
    FiniteGroupoid::from_fn(k, &arrows, (0..k).collect(), (0..k).collect(), |a, _| a)
}

/// The banal (pair) groupoid on `k` objects: exactly one arrow between any
/// two objects. Arrow `src * k + tgt` runs from `src` to `tgt`.
pub fn pair(k: usize) -> FiniteGroupoid {
    let mut arrows = Vec::with_capacity(k * k);
    for s in 0..k {
        for t in 0..k {
            arrows.push((s, t));
        }
    }
    let unit = (0..k).map(|x| x * k + x).collect();
    let inv = arrows.iter().map(|&(s, t)| t * k + s).collect();
    let arrows2 = arrows.clone();
    FiniteGroupoid::from_fn(k, &arrows, unit, inv, move |a, b| {
        arrows2[b].0 * k + arrows2[a].1
    })
}

/// The cyclic group of order `k` as a one-object groupoid; arrow `j` is the
/// residue `j`.
pub fn cyclic(k: usize) -> FiniteGroupoid {
    assert!(k >= 1, "cyclic group order must be positive");
    let arrows = vec![(0, 0); k];
    let inv = (0..k).map(|j| (k - j) % k).collect();
    FiniteGroupoid::from_fn(1, &arrows, vec![0], inv, move |a, b| (a + b) % k)
}

/// The symmetric group on three letters. Arrows are the permutations in
/// lexicographic order of their image tuples, so arrow 0 is the identity.
pub fn sym3() -> FiniteGroupoid {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let arrows = vec![(0, 0); 6];
    let inv = perms
        .iter()
        .map(|p| {
            let mut q = [0; 3];
            for i in 0..3 {
                q[p[i]] = i;
            }
            index(q)
        })
        .collect();
    FiniteGroupoid::from_fn(1, &arrows, vec![0], inv, |a, b| {
        let (pa, pb) = (perms[a], perms[b]);
        index([pa[pb[0]], pa[pb[1]], pa[pb[2]]])
    })
}

/// The principal groupoid of an equivalence relation on `k` points given by
/// its blocks (the graph of the relation).
pub fn equiv_rel(k: usize, blocks: &[Vec<usize>]) -> Result<FiniteGroupoid> {
    let mut block_of = vec![usize::MAX; k];
    for (i, block) in blocks.iter().enumerate() {
        for &x in block {
            if x >= k {
                return Err(GpdError::Malformed(format!("block element {x} outside 0..{k}")));
            }
            if block_of[x] != usize::MAX {
                return Err(GpdError::Malformed(format!("element {x} appears in two blocks")));
            }
            block_of[x] = i;
        }
    }
    if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(GpdError::Malformed(format!("element {x} is in no block")));
    }
    let mut arrows = Vec::new();
    let mut id = vec![vec![usize::MAX; k]; k];
    for s in 0..k {
        for t in 0..k {
            if block_of[s] == block_of[t] {
                id[s][t] = arrows.len();
                arrows.push((s, t));
            }
        }
    }
    let unit = (0..k).map(|x| id[x][x]).collect();
    let inv = arrows.iter().map(|&(s, t)| id[t][s]).collect();
    let a2 = arrows.clone();
    Ok(FiniteGroupoid::from_fn(k, &arrows, unit, inv, move |a, b| {
        id[a2[b].0][a2[a].1]
    }))
}

/// The action groupoid of a group (one-object groupoid) acting on
/// `0..points` from the left; `act[g][x]` is `g·x`. Arrow `g * points + x`
/// is `(g, x): x → g·x`.
pub fn action(group: &FiniteGroupoid, points: usize, act: &[Vec<usize>]) -> Result<FiniteGroupoid> {
    if group.object_count() != 1 {
        return Err(GpdError::Malformed("acting groupoid must have one object".into()));
    }
    let order = group.arrow_count();
    if act.len() != order || act.iter().any(|row| row.len() != points) {
        return Err(GpdError::Malformed("action table has the wrong shape".into()));
    }
    if act.iter().flatten().any(|&y| y >= points) {
        return Err(GpdError::Malformed("action table leaves the point set".into()));
    }
    let e = group.unit(0);
    if (0..points).any(|x| act[e][x] != x) {
        return Err(GpdError::Malformed("non-action map: the unit does not act trivially".into()));
    }
    for g in group.arrows() {
        for h in group.arrows() {
            let gh = group.compose(g, h);
            if (0..points).any(|x| act[gh][x] != act[g][act[h][x]]) {
                return Err(GpdError::Malformed(format!(
                    "non-action map: (g h)·x differs from g·(h·x) for g = {g}, h = {h}"
                )));
            }
        }
    }
    let mut arrows = Vec::with_capacity(order * points);
    for g in 0..order {
        for x in 0..points {
            arrows.push((x, act[g][x]));
        }
    }
    let unit = (0..points).map(|x| e * points + x).collect();
    let inv = (0..order * points)
        .map(|a| {
            let (g, x) = (a / points, a % points);
            group.inv(g) * points + act[g][x]
        })
        .collect();
    Ok(FiniteGroupoid::from_fn(points, &arrows, unit, inv, |a, b| {
        let (g, _) = (a / points, a % points);
        let (h, x) = (b / points, b % points);
        group.compose(g, h) * points + x
    }))
}

/// Action of the cyclic group of order `k` on `0..points` generated by the
/// permutation `generator`.
pub fn action_cyclic(k: usize, points: usize, generator: &[usize]) -> Result<FiniteGroupoid> {
    if generator.len() != points {
        return Err(GpdError::Malformed("generator image list has the wrong length".into()));
    }
    let mut act = vec![(0..points).collect::<Vec<_>>()];
    for j in 1..k {
        let prev: &Vec<usize> = &act[j - 1];
        let next: Vec<usize> = prev.iter().map(|&x| *generator.get(x).unwrap_or(&usize::MAX)).collect();
        if next.iter().any(|&y| y >= points) {
            return Err(GpdError::Malformed("generator image outside the point set".into()));
        }
        act.push(next);
    }
    action(&cyclic(k), points, &act)
}

/// Disjoint union: objects and arrows of `g` first, then those of `h`.
pub fn disjoint_union(g: &FiniteGroupoid, h: &FiniteGroupoid) -> FiniteGroupoid {
    let (n, m) = (g.object_count(), g.arrow_count());
    let mut arrows: Vec<(usize, usize)> = g.arrows().map(|a| (g.src(a), g.tgt(a))).collect();
    arrows.extend(h.arrows().map(|a| (h.src(a) + n, h.tgt(a) + n)));
    let mut unit: Vec<usize> = g.objects().map(|x| g.unit(x)).collect();
    unit.extend(h.objects().map(|x| h.unit(x) + m));
    let mut inv: Vec<usize> = g.arrows().map(|a| g.inv(a)).collect();
    inv.extend(h.arrows().map(|a| h.inv(a) + m));
    FiniteGroupoid::from_fn(n + h.object_count(), &arrows, unit, inv, |a, b| {
        if a < m {
            g.compose(a, b)
        } else {
            h.compose(a - m, b - m) + m
        }
    })
}

/// Product: object `(x, y)` is `x * |obj h| + y`, arrow `(a, b)` is
/// `a * |arr h| + b`.
pub fn product(g: &FiniteGroupoid, h: &FiniteGroupoid) -> FiniteGroupoid {
    let (hn, hm) = (h.object_count(), h.arrow_count());
    let mut arrows = Vec::with_capacity(g.arrow_count() * hm);
    for a in g.arrows() {
        for b in h.arrows() {
            arrows.push((g.src(a) * hn + h.src(b), g.tgt(a) * hn + h.tgt(b)));
        }
    }
    let mut unit = Vec::new();
    for x in g.objects() {
        for y in h.objects() {
            unit.push(g.unit(x) * hm + h.unit(y));
        }
    }
    let inv = (0..arrows.len())
        .map(|c| g.inv(c / hm) * hm + h.inv(c % hm))
        .collect();
    FiniteGroupoid::from_fn(g.object_count() * hn, &arrows, unit, inv, |c, d| {
        g.compose(c / hm, d / hm) * hm + h.compose(c % hm, d % hm)
    })
}
