//! Equivalence moves on surgery presentations, for invariance tests.
//!
//! Braid presentations carry explicit framings per component, so Markov moves
//! only have to carry the framing integers across the renumbering of components.

use super::braid::BraidWord;
use super::fixtures;
use super::{DiagramError, FramedLinkDiagram};

/// A braid word with the framing of each closure component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidPresentation {
    pub braid: BraidWord,
    pub framings: Vec<i64>,
}

impl BraidPresentation {
    pub fn new(
        strands: usize,
        word: Vec<i64>,
        framings: Vec<i64>,
    ) -> Result<BraidPresentation, DiagramError> {
        let braid = BraidWord::new(strands, word)?;
        let nc = braid.components().len();
        if framings.len() != nc {
            return Err(DiagramError::FramingCount {
                expected: nc,
                got: framings.len(),
            });
        }
        Ok(BraidPresentation { braid, framings })
    }

    pub fn diagram(&self) -> FramedLinkDiagram {
        self.braid
            .closure(&self.framings)
            .expect("framing count checked")
    }

    /// Builds the presentation with word `word` whose top strand `p` lies on the
    /// old component of top strand `old_strand(p)`.
    fn renumbered(
        &self,
        strands: usize,
        word: Vec<i64>,
        old_strand: impl Fn(usize) -> usize,
    ) -> BraidPresentation {
        let braid = BraidWord::new(strands, word).expect("generators stay in range");
        let old = self.braid.strand_components();
        let framings = braid
            .components()
            .iter()
            .map(|cyc| self.framings[old[old_strand(cyc[0])]])
            .collect();
        BraidPresentation { braid, framings }
    }

    /// σᵢ^{±1} · w · σᵢ^{∓1}.
    pub fn conjugate(&self, i: usize, positive: bool) -> Result<BraidPresentation, DiagramError> {
        if i == 0 || i >= self.braid.strands {
            return Err(DiagramError::InvalidMove(format!(
                "no generator {i} on {} strands",
                self.braid.strands
            )));
        }
        let g = if positive { i as i64 } else { -(i as i64) };
        let mut word = vec![g];
        word.extend(&self.braid.word);
        word.push(-g);
        Ok(self.renumbered(self.braid.strands, word, |p| swap(p, i)))
    }

    /// Moves the first letter of the word to the end.
    pub fn rotate(&self) -> Result<BraidPresentation, DiagramError> {
        let Some((&first, rest)) = self.braid.word.split_first() else {
            return Err(DiagramError::InvalidMove("empty word".into()));
        };
        let i = first.unsigned_abs() as usize;
        let mut word = rest.to_vec();
        word.push(first);
        Ok(self.renumbered(self.braid.strands, word, |p| swap(p, i)))
    }

    /// Adds a strand and the letter σₙ^{±1}.
    pub fn stabilize(&self, positive: bool) -> BraidPresentation {
        let n = self.braid.strands;
        let mut word = self.braid.word.clone();
        word.push(if positive { n as i64 } else { -(n as i64) });
        let n1 = n;
        self.renumbered(n + 1, word, move |p| if p == n1 { n1 - 1 } else { p })
    }

    /// Every single conjugation, rotation and stabilization of this presentation.
    pub fn neighbours(&self) -> Vec<(String, BraidPresentation)> {
        let mut out = Vec::new();
        for i in 1..self.braid.strands {
            for pos in [true, false] {
                out.push((
                    format!("conjugate({i},{pos})"),
                    self.conjugate(i, pos).expect("valid generator"),
                ));
            }
        }
        if let Ok(r) = self.rotate() {
            out.push(("rotate".into(), r));
        }
        for pos in [true, false] {
            out.push((format!("stabilize({pos})"), self.stabilize(pos)));
        }
        out
    }
}

fn swap(p: usize, i: usize) -> usize {
    if p == i - 1 {
        i
    } else if p == i {
        i - 1
    } else {
        p
    }
}

/// Diagrams equivalent to `p` by Markov moves, with a label per move.
pub fn move_generators(p: &BraidPresentation) -> Vec<(String, FramedLinkDiagram)> {
    p.neighbours()
        .into_iter()
        .map(|(n, q)| (n, q.diagram()))
        .collect()
}

/// Pairs of presentations related by one 2-handle slide: an unknot with framing
/// `a` slid over a split unknot with framing `k`.
pub fn handle_slide_pairs(
    range: std::ops::RangeInclusive<i64>,
) -> Vec<(String, FramedLinkDiagram, FramedLinkDiagram)> {
    let mut out = Vec::new();
    for a in range.clone() {
        for k in range.clone() {
            if k == 0 {
                continue;
            }
            out.push((
                format!("slide({a},{k})"),
                fixtures::unslid(a, k),
                fixtures::slide(a, k),
            ));
        }
    }
    out
}

/// `l` next to a Hopf link with framings (0, n); the union presents the same manifold.
pub fn eta_move(l: &FramedLinkDiagram, n: i64) -> FramedLinkDiagram {
    l.disjoint_union(&fixtures::hopf(0, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn same_link_data(a: &FramedLinkDiagram, b: &FramedLinkDiagram) -> bool {
        let mut fa = a.framings().to_vec();
        let mut fb = b.framings().to_vec();
        fa.sort();
        fb.sort();
        a.component_count() == b.component_count() && fa == fb && a.signature() == b.signature()
    }

    #[test]
    fn conjugating_the_hopf_link_keeps_its_data() {
        let p = BraidPresentation::new(2, vec![1, 1], vec![0, 0]).unwrap();
        let q = p.conjugate(1, true).unwrap();
        assert_eq!(q.diagram().linking_matrix(), p.diagram().linking_matrix());
    }

    #[test]
    fn stabilizing_the_empty_word() {
        let p = BraidPresentation::new(1, vec![], vec![5]).unwrap();
        let q = p.stabilize(false);
        assert_eq!(q.braid.word, vec![-1]);
        assert_eq!(q.diagram().framings(), &[5]);
        assert_eq!(q.diagram().blackboard_framings(), &[-1]);
    }

    #[test]
    fn neighbours_preserve_framings_per_component() {
        let p = BraidPresentation::new(3, vec![1, 1, 2, -1, 2], vec![1, -2]).unwrap();
        for (name, q) in p.neighbours() {
            let d = q.diagram();
            assert!(same_link_data(&d, &p.diagram()), "{name}");
            // Linking numbers are preserved as a multiset too.
            assert_eq!(
                d.linking_matrix()[0][1].abs(),
                p.diagram().linking_matrix()[0][1].abs(),
                "{name}"
            );
        }
    }

    #[test]
    fn slide_changes_linking_matrix_by_congruence() {
        for (_, a, b) in handle_slide_pairs(-2..=2) {
            assert_eq!(a.signature(), b.signature());
        }
    }
}
