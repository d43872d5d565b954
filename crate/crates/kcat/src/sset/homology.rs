//! Homology of normalized chains, fundamental group presentations, and the
//! three-valued invariant comparison.

use super::{DegSimplex, FinSSet, SsetError};
use crate::abelian::{
    smith_normal_form, AbGroupPresentation, CanonicalAbGroup, GroupPresentation, IntMatrix,
};
use num_bigint::BigInt;

/// Boundary matrix from dimension d to d-1 on nondegenerate simplices;
/// degenerate faces contribute nothing.
fn boundary_matrix(x: &FinSSet, d: usize) -> IntMatrix {
    let rows = x.n_nondeg(d - 1);
    let cols = x.n_nondeg(d);
    let mut m = IntMatrix::zero(rows, cols);
    for idx in 0..cols {
        let s = DegSimplex::nondeg(d, idx);
        for i in 0..=d {
            let f = x.face_of(i, &s);
            if f.is_degenerate() {
                continue;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let cur = m.get(f.base, idx).clone();
            m.set(f.base, idx, cur + BigInt::from(sign));
        }
    }
    m
}

/// H_n of the normalized chain complex. Exact only when the boundary from
/// dimension n+1 is available, hence the truncation requirement.
pub fn homology(x: &FinSSet, n: usize) -> Result<CanonicalAbGroup, SsetError> {
    if n + 1 > x.trunc {
        return Err(SsetError::TruncTooLow { needed: n + 1, have: x.trunc });
    }
    let cn = x.n_nondeg(n);
    let rank_in = if n == 0 { 0 } else { smith_normal_form(&boundary_matrix(x, n)).rank };
    let snf_out = smith_normal_form(&boundary_matrix(x, n + 1));
    let free_rank = cn - rank_in - snf_out.rank;
    let invariant_factors: Vec<BigInt> = snf_out
        .diagonal
        .into_iter()
        .filter(|v| *v != BigInt::from(1))
        .collect();
    Ok(CanonicalAbGroup { free_rank, invariant_factors })
}

/// Edge-path presentation of the fundamental group at `base` (a vertex id).
/// Generators are the nondegenerate edges of the component off a spanning
/// tree; relators come from nondegenerate 2-simplices.
pub fn pi1_presentation(
    x: &FinSSet,
    base: usize,
    require_connected: bool,
) -> Result<GroupPresentation, SsetError> {
    if x.trunc < 2 {
        return Err(SsetError::TruncTooLow { needed: 2, have: x.trunc });
    }
    let (comp, n_comp) = x.pi0();
    if require_connected && n_comp != 1 {
        return Err(SsetError::Disconnected);
    }
    let root = comp[base];

    // edges with endpoints: (src, dst) = (d1, d0)
    let n_edges = x.n_nondeg(1);
    let mut ends = Vec::with_capacity(n_edges);
    for e in 0..n_edges {
        let s = DegSimplex::nondeg(1, e);
        ends.push((x.face_of(1, &s).base, x.face_of(0, &s).base));
    }

    // spanning tree by BFS over the component
    let mut tree = vec![false; n_edges];
    let mut seen = vec![false; x.n_nondeg(0)];
    seen[base] = true;
    let mut queue = std::collections::VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for (e, &(a, b)) in ends.iter().enumerate() {
            let other = if a == v && !seen[b] {
                Some(b)
            } else if b == v && !seen[a] {
                Some(a)
            } else {
                None
            };
            if let Some(u) = other {
                seen[u] = true;
                tree[e] = true;
                queue.push_back(u);
            }
        }
    }

    let mut gen_of_edge: Vec<Option<usize>> = vec![None; n_edges];
    let mut generators = Vec::new();
    for e in 0..n_edges {
        if comp[ends[e].0] == root && !tree[e] {
            gen_of_edge[e] = Some(generators.len());
            generators.push(x.label(1, e).to_string());
        }
    }

    let edge_word = |ds: &DegSimplex| -> Vec<(usize, i32)> {
        if ds.is_degenerate() {
            return Vec::new();
        }
        match gen_of_edge[ds.base] {
            Some(g) => vec![(g, 1)],
            None => Vec::new(), // tree edge: contractible in the presentation
        }
    };

    let mut relators = Vec::new();
    for t in 0..x.n_nondeg(2) {
        let s = DegSimplex::nondeg(2, t);
        let v0 = x.vertex_of(&s, 0);
        if comp[v0] != root {
            continue;
        }
        // path d2 then d0 equals d1
        let mut word = Vec::new();
        word.extend(edge_word(&x.face_of(2, &s)));
        word.extend(edge_word(&x.face_of(0, &s)));
        for (g, e) in edge_word(&x.face_of(1, &s)).into_iter().rev() {
            word.push((g, -e));
        }
        if !word.is_empty() {
            relators.push(word);
        }
    }
    Ok(GroupPresentation { generators, relators })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantVerdict {
    Equivalent,
    Distinguished(String),
    Inconclusive(String),
}

fn component_pi1ab(x: &FinSSet) -> Result<Vec<CanonicalAbGroup>, SsetError> {
    let (comp, _) = x.pi0();
    let mut reps: Vec<usize> = Vec::new();
    for v in 0..x.n_nondeg(0) {
        if comp[v] == v {
            reps.push(v);
        }
    }
    let mut out = Vec::new();
    for r in reps {
        let pres = pi1_presentation(x, r, false)?;
        out.push(pres.abelianized().canonical());
    }
    out.sort_by_key(|c| format!("{}", c));
    Ok(out)
}

/// Compares |π0|, H_1..H_depth and π1-abelianizations per component. The
/// `Equivalent` verdict means computed invariants agree; it is not a
/// certificate of weak equivalence.
pub fn invariant_equiv(x: &FinSSet, y: &FinSSet, depth: usize) -> InvariantVerdict {
    if x.trunc < depth + 1 || y.trunc < depth + 1 {
        return InvariantVerdict::Inconclusive(format!(
            "need truncation {} to compare at depth {}",
            depth + 1,
            depth
        ));
    }
    let (_, nx) = x.pi0();
    let (_, ny) = y.pi0();
    if nx != ny {
        return InvariantVerdict::Distinguished(format!("π0: {} vs {}", nx, ny));
    }
    for n in 1..=depth {
        let hx = homology(x, n).expect("trunc checked");
        let hy = homology(y, n).expect("trunc checked");
        if hx != hy {
            return InvariantVerdict::Distinguished(format!("H{}: {} vs {}", n, hx, hy));
        }
    }
    if depth >= 1 {
        let px = component_pi1ab(x).expect("trunc checked");
        let py = component_pi1ab(y).expect("trunc checked");
        if px != py {
            let show = |v: &[CanonicalAbGroup]| {
                v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
            };
            return InvariantVerdict::Distinguished(format!(
                "π1-abelianizations per component: [{}] vs [{}]",
                show(&px),
                show(&py)
            ));
        }
    }
    InvariantVerdict::Equivalent
}

/// π1 abelianized at a chosen basepoint.
pub fn pi1_abelianized(x: &FinSSet, base: usize) -> Result<AbGroupPresentation, SsetError> {
    Ok(pi1_presentation(x, base, false)?.abelianized())
}
