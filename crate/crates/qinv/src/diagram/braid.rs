//! Braid words and their closures.
//!
//! Generator `i` (1-based) crosses braid strands `i-1` and `i`; a positive entry is
//! a positive crossing. The closure is drawn clockwise. Nested maxima open an
//! upward return strand on the left and a downward braid strand on the right,
//! and braid strand `j` sits at position `2n-1-j` of the braid region. With this
//! layout the components come out numbered by their smallest braid strand.

use super::{DiagramError, FramedLinkDiagram, Slice};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub word: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i64>) -> Result<BraidWord, DiagramError> {
        for &g in &word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(DiagramError::Generator { gen: g, strands });
            }
        }
        Ok(BraidWord { strands, word })
    }

    /// Underlying permutation: `perm[j]` is the bottom position of the strand
    /// entering at top position `j`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = top strand now at pos
        for &g in &self.word {
            let i = g.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            perm[s] = pos;
        }
        perm
    }

    /// Cycles of the closure, each listed from its smallest strand, sorted by it.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut out = Vec::new();
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = perm[x];
            }
            out.push(cyc);
        }
        out
    }

    /// Component index of each top strand.
    pub fn strand_components(&self) -> Vec<usize> {
        let mut c = vec![0; self.strands];
        for (k, cyc) in self.components().iter().enumerate() {
            for &s in cyc {
                c[s] = k;
            }
        }
        c
    }

    /// Sum of crossing signs between strands of the same component, per component.
    pub fn self_writhe(&self) -> Vec<i64> {
        let comp = self.strand_components();
        let mut w = vec![0i64; self.components().len()];
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize;
            let (a, b) = (at[i - 1], at[i]);
            if comp[a] == comp[b] {
                w[comp[a]] += g.signum();
            }
            at.swap(i - 1, i);
        }
        w
    }

    pub fn slices(&self) -> Vec<Slice> {
        let n = self.strands;
        let mut s: Vec<Slice> = (0..n)
            .map(|k| Slice::Cap {
                pos: k,
                left_down: false,
            })
            .collect();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize;
            s.push(Slice::Cross {
                pos: 2 * n - 1 - i,
                positive: g > 0,
            });
        }
        s.extend((0..n).rev().map(|k| Slice::Cup { pos: k }));
        s
    }

    pub fn closure(&self, framings: &[i64]) -> Result<FramedLinkDiagram, DiagramError> {
        let nc = self.components().len();
        if framings.len() != nc {
            return Err(DiagramError::FramingCount {
                expected: nc,
                got: framings.len(),
            });
        }
        FramedLinkDiagram::new(self.slices(), Some(framings.to_vec()))
    }

    /// Closure with the blackboard framing of the diagram.
    pub fn blackboard_closure(&self) -> FramedLinkDiagram {
        FramedLinkDiagram::new(self.slices(), None).expect("braid closures are closed")
    }
}

/// The closure of `word` on `strands` strands with the given framing per component.
pub fn from_braid_closure(
    word: &[i64],
    strands: usize,
    framings: &[i64],
) -> Result<FramedLinkDiagram, DiagramError> {
    BraidWord::new(strands, word.to_vec())?.closure(framings)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_from_empty_word() {
        let d = from_braid_closure(&[], 1, &[0]).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.linking_matrix(), &[vec![0]]);
        assert_eq!(d.signature(), (0, 0));
    }

    #[test]
    fn hopf_link_data() {
        let d = from_braid_closure(&[1, 1], 2, &[0, 0]).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.linking_matrix(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(d.signature(), (1, 1));
        let n = from_braid_closure(&[-1, -1], 2, &[2, -3]).unwrap();
        assert_eq!(n.linking_matrix(), &[vec![2, -1], vec![-1, -3]]);
    }

    #[test]
    fn trefoil_is_a_knot() {
        let b = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        assert_eq!(b.components().len(), 1);
        assert_eq!(b.self_writhe(), vec![3]);
        assert_eq!(b.blackboard_closure().framings(), &[3]);
    }

    #[test]
    fn diagram_components_follow_cycles() {
        // Strands 0 and 2 form one cycle, strand 1 another; crossings between them
        // must be attributed consistently with the cycle numbering.
        let b = BraidWord::new(3, vec![1, 2, 1, 1, 2, -1]).unwrap();
        let cycles = b.components();
        let d = b.blackboard_closure();
        assert_eq!(d.component_count(), cycles.len());
        assert_eq!(d.blackboard_framings(), b.self_writhe().as_slice());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            from_braid_closure(&[2], 2, &[0]),
            Err(DiagramError::Generator { .. })
        ));
        assert!(matches!(
            from_braid_closure(&[1, 1], 2, &[0]),
            Err(DiagramError::FramingCount { .. })
        ));
    }
}
