//! Bisimplicial sets with full simplex sets per bidegree, and the diagonal.

use super::{FinSSet, SsetError};

/// Full simplex sets indexed by (p, q), with horizontal and vertical
/// structure maps given as index tables.
pub struct BiSSet {
    pub trunc_p: usize,
    pub trunc_q: usize,
    /// number of simplices at (p, q)
    pub sizes: Vec<Vec<usize>>,
    /// hface[p][q][i][k]: d_i horizontal of simplex k at (p,q), valid for p >= 1
    pub hface: Vec<Vec<Vec<Vec<usize>>>>,
    pub vface: Vec<Vec<Vec<Vec<usize>>>>,
    /// hdeg[p][q][i][k]: s_i horizontal, landing at (p+1, q)
    pub hdeg: Vec<Vec<Vec<Vec<usize>>>>,
    pub vdeg: Vec<Vec<Vec<Vec<usize>>>>,
    pub labels: Vec<Vec<Vec<String>>>,
}

impl BiSSet {
    /// Horizontal and vertical simplicial identities plus commutation of the
    /// two directions, checked exhaustively on the stored tables.
    pub fn validate(&self) -> Result<(), String> {
        for p in 1..=self.trunc_p {
            for q in 1..=self.trunc_q {
                for k in 0..self.sizes[p][q] {
                    for i in 0..=p {
                        for j in 0..=q {
                            let hv = self.vface[p - 1][q][j][self.hface[p][q][i][k]];
                            let vh = self.hface[p][q - 1][i][self.vface[p][q][j][k]];
                            if hv != vh {
                                return Err(format!(
                                    "directions do not commute at ({},{}) idx {}",
                                    p, q, k
                                ));
                            }
                        }
                    }
                }
            }
        }
        for p in 2..=self.trunc_p {
            for q in 0..=self.trunc_q {
                for k in 0..self.sizes[p][q] {
                    for j in 1..=p {
                        for i in 0..j {
                            let lhs = self.hface[p - 1][q][i][self.hface[p][q][j][k]];
                            let rhs = self.hface[p - 1][q][j - 1][self.hface[p][q][i][k]];
                            if lhs != rhs {
                                return Err(format!(
                                    "horizontal identities fail at ({},{}) idx {}",
                                    p, q, k
                                ));
                            }
                        }
                    }
                }
            }
        }
        for p in 0..=self.trunc_p {
            for q in 2..=self.trunc_q {
                for k in 0..self.sizes[p][q] {
                    for j in 1..=q {
                        for i in 0..j {
                            let lhs = self.vface[p][q - 1][i][self.vface[p][q][j][k]];
                            let rhs = self.vface[p][q - 1][j - 1][self.vface[p][q][i][k]];
                            if lhs != rhs {
                                return Err(format!(
                                    "vertical identities fail at ({},{}) idx {}",
                                    p, q, k
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Diagonal: d-simplices are the (d, d)-simplices, faces and degeneracies are
/// applied in both directions at once.
pub fn diag(b: &BiSSet, trunc: usize) -> Result<FinSSet, SsetError> {
    let have = b.trunc_p.min(b.trunc_q);
    if trunc > have {
        return Err(SsetError::TruncTooLow { needed: trunc, have });
    }
    let (sset, _) = FinSSet::from_levels(
        trunc,
        |d| (0..b.sizes[d][d]).collect::<Vec<usize>>(),
        |d, i, &k: &usize| b.vface[d - 1][d][i][b.hface[d][d][i][k]],
        |d, i, &k: &usize| b.vdeg[d + 1][d][i][b.hdeg[d][d][i][k]],
        |d, &k| b.labels[d][d][k].clone(),
    );
    Ok(sset)
}
