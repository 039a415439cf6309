//! Finite groups as multiplication tables.

use super::ZooError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    pub name: String,
    pub labels: Vec<String>,
    /// `mul[a][b]` is the index of a·b.
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
}

impl FiniteGroupTable {
    /// Validates the group axioms and derives inverses.
    pub fn from_table(
        name: &str,
        labels: Vec<String>,
        mul: Vec<Vec<usize>>,
    ) -> Result<FiniteGroupTable, ZooError> {
        let n = mul.len();
        let bad = |m: &str| Err(ZooError::InvalidGroup(format!("{name}: {m}")));
        if n == 0
            || labels.len() != n
            || mul
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return bad("table shape");
        }
        let Some(e) = (0..n).find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a)) else {
            return bad("no identity");
        };
        let mut inv = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == e && mul[b][a] == e) {
                Some(b) => inv[a] = b,
                None => return bad("missing inverse"),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return bad("not associative");
                    }
                }
            }
        }
        Ok(FiniteGroupTable {
            name: name.into(),
            labels,
            mul,
            inv,
            identity: e,
        })
    }

    pub fn cyclic(n: usize) -> FiniteGroupTable {
        assert!(n >= 1);
        let labels = (0..n)
            .map(|i| {
                if i == 0 {
                    "e".to_string()
                } else {
                    format!("g^{i}")
                }
            })
            .collect();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroupTable::from_table(&format!("Z{n}"), labels, mul).expect("cyclic group table")
    }

    /// The symmetric group on three letters, elements ordered
    /// e, (01), (02), (12), (012), (021); composition is (στ)(x) = σ(τ(x)).
    pub fn s3() -> FiniteGroupTable {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let labels = ["e", "(01)", "(02)", "(12)", "(012)", "(021)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let idx = |p: [usize; 3]| {
            perms
                .iter()
                .position(|q| *q == p)
                .expect("closed under composition")
        };
        let mul = (0..6)
            .map(|a| {
                (0..6)
                    .map(|b| {
                        idx([
                            perms[a][perms[b][0]],
                            perms[a][perms[b][1]],
                            perms[a][perms[b][2]],
                        ])
                    })
                    .collect()
            })
            .collect();
        FiniteGroupTable::from_table("S3", labels, mul).expect("S3 table")
    }

    /// Permutation of {0,1,2} for an S3 element index (only meaningful for [`Self::s3`]).
    pub fn s3_permutation(i: usize) -> [usize; 3] {
        [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ][i]
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv[a] } else { a };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul[acc][base])
    }

    pub fn element_order(&self, a: usize) -> usize {
        (1..=self.order())
            .find(|&k| self.pow(a, k as i64) == self.identity)
            .expect("finite order")
    }

    pub fn conj(&self, x: usize, h: usize) -> usize {
        self.mul[self.mul[x][h]][self.inv[x]]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    /// Centralizer of a, in increasing index order.
    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| self.mul[x][a] == self.mul[a][x])
            .collect()
    }

    /// Conjugacy class representatives (smallest index in each class).
    pub fn class_representatives(&self) -> Vec<usize> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            reps.push(a);
            for x in 0..n {
                seen[self.conj(x, a)] = true;
            }
        }
        reps
    }

    /// Number of solutions of g^k = e.
    pub fn count_kth_roots_of_identity(&self, k: i64) -> usize {
        (0..self.order())
            .filter(|&g| self.pow(g, k) == self.identity)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_of_order_six() {
        let g = FiniteGroupTable::s3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.class_representatives().len(), 3);
        assert_eq!(g.count_kth_roots_of_identity(2), 4);
        assert_eq!(g.count_kth_roots_of_identity(3), 3);
        assert_eq!(g.count_kth_roots_of_identity(6), 6);
    }

    #[test]
    fn cyclic_roots() {
        let g = FiniteGroupTable::cyclic(3);
        assert_eq!(g.count_kth_roots_of_identity(3), 3);
        assert_eq!(g.count_kth_roots_of_identity(2), 1);
    }

    #[test]
    fn rejects_non_group() {
        let r = FiniteGroupTable::from_table(
            "bad",
            vec!["a".into(), "b".into()],
            vec![vec![0, 0], vec![0, 0]],
        );
        assert!(r.is_err());
    }
}
