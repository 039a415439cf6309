//! Framed link diagrams as words of elementary slices, read from top to bottom.
//!
//! A level is the row of strands between two consecutive slices. Each slice keeps
//! every strand except the ones it touches, and acts at a stated position:
//!
//! * `Cap { pos, left_down }` opens two new strands at `pos`, `pos + 1` (a local
//!   maximum). `left_down` says the left one runs downward.
//! * `Cup { pos }` closes the strands at `pos`, `pos + 1` (a local minimum).
//! * `Cross { pos, positive }` crosses the strands at `pos`, `pos + 1`. The sign is
//!   the usual right-handed sign of the oriented crossing.
//! * `Twist { pos, positive }` puts a ±1 curl on the strand at `pos`.
//! * `Coupon { pos, width }` is a box the `width` strands at `pos..pos + width`
//!   pass through; width 0 is a free-standing coupon.
//!
//! Framings are either given as integers per component or, if absent, read off
//! the diagram (self-writhe plus twists).

pub mod braid;
pub mod fixtures;
pub mod moves;

use serde::{Deserialize, Serialize};

pub use braid::{from_braid_closure, BraidWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("slice {slice}: position {pos} out of range for {strands} strands")]
    Position {
        slice: usize,
        pos: usize,
        strands: usize,
    },
    #[error("slice {slice}: cup joins two strands with the same direction")]
    CupOrientation { slice: usize },
    #[error("diagram is not closed: {0} strands remain at the bottom")]
    NotClosed(usize),
    #[error("expected {expected} framings, got {got}")]
    FramingCount { expected: usize, got: usize },
    #[error("braid generator {gen} out of range for {strands} strands")]
    Generator { gen: i64, strands: usize },
    #[error("linking number between components {0} and {1} is not an integer")]
    HalfLinking(usize, usize),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("malformed link JSON: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slice {
    Cap { pos: usize, left_down: bool },
    Cup { pos: usize },
    Cross { pos: usize, positive: bool },
    Twist { pos: usize, positive: bool },
    Coupon { pos: usize, width: usize },
}

/// Direction of a strand segment on the page.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Dir {
    Down,
    Up,
}

/// Identifies the strand at position `pos` of level `level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Segment {
    pub level: usize,
    pub pos: usize,
}

/// Geometric data of one crossing slice. `left` is the strand entering at the
/// top-left (it leaves at the bottom-right).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingInfo {
    pub slice: usize,
    pub positive: bool,
    pub left_over: bool,
    pub left_component: usize,
    pub right_component: usize,
}

/// What a traversal passes through when leaving a segment at its head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Event {
    /// A strand continuing through an untouched position.
    Plain,
    /// Leg `leg` (0 = top-left strand, 1 = top-right strand) of crossing `id`.
    Crossing {
        id: usize,
        leg: usize,
    },
    Twist {
        positive: bool,
    },
    /// Leg `leg` of coupon `id`.
    Coupon {
        id: usize,
        leg: usize,
    },
    /// A local extremum. `g_power` is the power of the balancing element it
    /// carries: maxima opening to the right (left strand up) carry G⁻¹, minima
    /// closing a downward left strand carry G, the other two carry nothing.
    Extremum {
        g_power: i64,
    },
}

/// A traversal step: leaving `from` through `event` with the strand running
/// upward (`up`) or downward.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub from: Segment,
    pub event: Event,
    pub up: bool,
}

/// A closed, type-checked slice diagram with its derived link data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedLinkDiagram {
    slices: Vec<Slice>,
    framings_given: Option<Vec<i64>>,
    counts: Vec<usize>,
    dirs: Vec<Vec<Dir>>,
    comps: Vec<Vec<usize>>,
    ncomp: usize,
    crossings: Vec<CrossingInfo>,
    coupons: Vec<(usize, usize)>,
    blackboard: Vec<i64>,
    framings: Vec<i64>,
    linking: Vec<Vec<i64>>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// How strand `i` of the level below a slice arises from the level above it.
enum Origin {
    Above(usize),
    New,
}

fn below_origins(s: &Slice, above: usize) -> Vec<Origin> {
    match *s {
        Slice::Cap { pos, .. } => (0..above + 2)
            .map(|i| {
                if i < pos {
                    Origin::Above(i)
                } else if i < pos + 2 {
                    Origin::New
                } else {
                    Origin::Above(i - 2)
                }
            })
            .collect(),
        Slice::Cup { pos } => (0..above - 2)
            .map(|i| Origin::Above(if i < pos { i } else { i + 2 }))
            .collect(),
        Slice::Cross { pos, .. } => (0..above)
            .map(|i| {
                Origin::Above(if i == pos {
                    pos + 1
                } else if i == pos + 1 {
                    pos
                } else {
                    i
                })
            })
            .collect(),
        Slice::Twist { .. } | Slice::Coupon { .. } => (0..above).map(Origin::Above).collect(),
    }
}

impl FramedLinkDiagram {
    /// Type-checks the word and derives orientations, components and linking data.
    pub fn new(
        slices: Vec<Slice>,
        framings: Option<Vec<i64>>,
    ) -> Result<FramedLinkDiagram, DiagramError> {
        let mut counts = vec![0usize];
        let mut dirs: Vec<Vec<Dir>> = vec![Vec::new()];
        for (k, s) in slices.iter().enumerate() {
            let n = *counts.last().expect("nonempty");
            let (pos, need) = match *s {
                Slice::Cap { pos, .. } => (pos, 0),
                Slice::Cup { pos } | Slice::Cross { pos, .. } => (pos, 2),
                Slice::Twist { pos, .. } => (pos, 1),
                Slice::Coupon { pos, width } => (pos, width),
            };
            let ok = if need == 0 { pos <= n } else { pos + need <= n };
            if !ok {
                return Err(DiagramError::Position {
                    slice: k,
                    pos,
                    strands: n,
                });
            }
            let above = &dirs[k];
            if let Slice::Cup { pos } = *s {
                if above[pos] == above[pos + 1] {
                    return Err(DiagramError::CupOrientation { slice: k });
                }
            }
            let below: Vec<Dir> = below_origins(s, n)
                .iter()
                .enumerate()
                .map(|(i, o)| match (o, s) {
                    (Origin::Above(j), _) => above[*j],
                    (Origin::New, Slice::Cap { pos, left_down }) => {
                        if (i == *pos) == *left_down {
                            Dir::Down
                        } else {
                            Dir::Up
                        }
                    }
                    _ => unreachable!("only caps create strands"),
                })
                .collect();
            counts.push(below.len());
            dirs.push(below);
        }
        let last = *counts.last().expect("nonempty");
        if last != 0 {
            return Err(DiagramError::NotClosed(last));
        }

        // Components by union-find over segments.
        let offsets: Vec<usize> = counts
            .iter()
            .scan(0usize, |acc, c| {
                let o = *acc;
                *acc += c;
                Some(o)
            })
            .collect();
        let total: usize = counts.iter().sum();
        let mut dsu = Dsu((0..total).collect());
        for (k, s) in slices.iter().enumerate() {
            for (i, o) in below_origins(s, counts[k]).iter().enumerate() {
                if let Origin::Above(j) = o {
                    dsu.union(offsets[k] + j, offsets[k + 1] + i);
                }
            }
            match *s {
                Slice::Cap { pos, .. } => dsu.union(offsets[k + 1] + pos, offsets[k + 1] + pos + 1),
                Slice::Cup { pos } => dsu.union(offsets[k] + pos, offsets[k] + pos + 1),
                _ => {}
            }
        }
        let mut root_to_comp: std::collections::HashMap<usize, usize> = Default::default();
        let mut comps: Vec<Vec<usize>> = Vec::with_capacity(counts.len());
        for (level, &c) in counts.iter().enumerate() {
            let row = (0..c)
                .map(|p| {
                    let r = dsu.find(offsets[level] + p);
                    let next = root_to_comp.len();
                    *root_to_comp.entry(r).or_insert(next)
                })
                .collect();
            comps.push(row);
        }
        let ncomp = root_to_comp.len();

        let mut crossings = Vec::new();
        let mut coupons = Vec::new();
        let mut blackboard = vec![0i64; ncomp];
        let mut twice_lk = vec![vec![0i64; ncomp]; ncomp];
        for (k, s) in slices.iter().enumerate() {
            match *s {
                Slice::Cross { pos, positive } => {
                    let (dl, dr) = (dirs[k][pos], dirs[k][pos + 1]);
                    let right_over = positive == (dl == dr);
                    let (cl, cr) = (comps[k][pos], comps[k][pos + 1]);
                    let sign = if positive { 1 } else { -1 };
                    if cl == cr {
                        blackboard[cl] += sign;
                    } else {
                        twice_lk[cl][cr] += sign;
                        twice_lk[cr][cl] += sign;
                    }
                    crossings.push(CrossingInfo {
                        slice: k,
                        positive,
                        left_over: !right_over,
                        left_component: cl,
                        right_component: cr,
                    });
                }
                Slice::Twist { pos, positive } => {
                    blackboard[comps[k][pos]] += if positive { 1 } else { -1 }
                }
                Slice::Coupon { width, .. } => coupons.push((k, width)),
                _ => {}
            }
        }
        let framings_given = framings;
        let framings = match &framings_given {
            Some(f) if f.len() != ncomp => {
                return Err(DiagramError::FramingCount {
                    expected: ncomp,
                    got: f.len(),
                })
            }
            Some(f) => f.clone(),
            None => blackboard.clone(),
        };
        let mut linking = vec![vec![0i64; ncomp]; ncomp];
        for i in 0..ncomp {
            for j in 0..ncomp {
                if i == j {
                    linking[i][j] = framings[i];
                } else if twice_lk[i][j] % 2 != 0 {
                    return Err(DiagramError::HalfLinking(i, j));
                } else {
                    linking[i][j] = twice_lk[i][j] / 2;
                }
            }
        }
        Ok(FramedLinkDiagram {
            slices,
            framings_given,
            counts,
            dirs,
            comps,
            ncomp,
            crossings,
            coupons,
            blackboard,
            framings,
            linking,
        })
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn component_count(&self) -> usize {
        self.ncomp
    }

    pub fn strand_counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn direction(&self, s: Segment) -> Dir {
        self.dirs[s.level][s.pos]
    }

    pub fn component_of(&self, s: Segment) -> usize {
        self.comps[s.level][s.pos]
    }

    pub fn crossings(&self) -> &[CrossingInfo] {
        &self.crossings
    }

    /// (slice index, width) of every coupon, in slice order.
    pub fn coupons(&self) -> &[(usize, usize)] {
        &self.coupons
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    /// Framings as given at construction, or `None` for blackboard framing.
    pub fn explicit_framings(&self) -> Option<&[i64]> {
        self.framings_given.as_deref()
    }

    /// Self-writhe plus twist slices, per component.
    pub fn blackboard_framings(&self) -> &[i64] {
        &self.blackboard
    }

    /// Framing minus blackboard framing: the number of extra curls per component.
    pub fn framing_defects(&self) -> Vec<i64> {
        self.framings
            .iter()
            .zip(&self.blackboard)
            .map(|(f, b)| f - b)
            .collect()
    }

    pub fn linking_matrix(&self) -> &[Vec<i64>] {
        &self.linking
    }

    pub fn signature(&self) -> (usize, usize) {
        signature(self)
    }

    /// Same diagram with the given framing integers.
    pub fn with_framings(&self, framings: Vec<i64>) -> Result<FramedLinkDiagram, DiagramError> {
        FramedLinkDiagram::new(self.slices.clone(), Some(framings))
    }

    /// The segments of each component, in traversal order starting from its
    /// canonical basepoint.
    pub fn component_segments(&self) -> Vec<Vec<Segment>> {
        split(self)
            .traversals
            .iter()
            .map(|t| t.iter().map(|s| s.from).collect())
            .collect()
    }

    /// The next segment and event when leaving `s` at its head.
    pub fn step(&self, s: Segment) -> (Segment, Event) {
        let up = self.direction(s) == Dir::Up;
        // The slice at the head of s, and the position of s relative to it.
        let (k, from_above) = if up {
            (s.level - 1, false)
        } else {
            (s.level, true)
        };
        let slice = self.slices[k];
        let seg = |level: usize, pos: usize| Segment { level, pos };
        if from_above {
            match slice {
                Slice::Cup { pos } if s.pos == pos || s.pos == pos + 1 => {
                    let other = if s.pos == pos { pos + 1 } else { pos };
                    let g_power = if s.pos == pos { 1 } else { 0 };
                    return (seg(k, other), Event::Extremum { g_power });
                }
                Slice::Cross { pos, .. } if s.pos == pos || s.pos == pos + 1 => {
                    let id = self.crossing_id(k);
                    let (to, leg) = if s.pos == pos { (pos + 1, 0) } else { (pos, 1) };
                    return (seg(k + 1, to), Event::Crossing { id, leg });
                }
                _ => {}
            }
            let below = below_origins(&slice, self.counts[k]);
            let i = below
                .iter()
                .position(|o| matches!(o, Origin::Above(j) if *j == s.pos))
                .expect("strand continues below");
            (seg(k + 1, i), self.pass_event(k, i))
        } else {
            match slice {
                Slice::Cap { pos, .. } if s.pos == pos || s.pos == pos + 1 => {
                    let other = if s.pos == pos { pos + 1 } else { pos };
                    let g_power = if s.pos == pos { -1 } else { 0 };
                    return (seg(k + 1, other), Event::Extremum { g_power });
                }
                Slice::Cross { pos, .. } if s.pos == pos || s.pos == pos + 1 => {
                    let id = self.crossing_id(k);
                    // Leaving bottom-left means the strand entered top-right.
                    let (to, leg) = if s.pos == pos { (pos + 1, 1) } else { (pos, 0) };
                    return (seg(k, to), Event::Crossing { id, leg });
                }
                _ => {}
            }
            let below = below_origins(&slice, self.counts[k]);
            let j = match below[s.pos] {
                Origin::Above(j) => j,
                Origin::New => unreachable!("handled as cap"),
            };
            (seg(k, j), self.pass_event(k, s.pos))
        }
    }

    /// Event for the strand at position `below_pos` under slice `k` passing through it.
    fn pass_event(&self, k: usize, below_pos: usize) -> Event {
        match self.slices[k] {
            Slice::Twist { pos, positive } if pos == below_pos => Event::Twist { positive },
            Slice::Coupon { pos, width } if below_pos >= pos && below_pos < pos + width => {
                let id = self
                    .coupons
                    .iter()
                    .position(|(s, _)| *s == k)
                    .expect("coupon registered");
                Event::Coupon {
                    id,
                    leg: below_pos - pos,
                }
            }
            _ => Event::Plain,
        }
    }

    fn crossing_id(&self, slice: usize) -> usize {
        self.crossings
            .iter()
            .position(|c| c.slice == slice)
            .expect("crossing registered")
    }

    /// Disjoint union: `self` drawn above `other`.
    pub fn disjoint_union(&self, other: &FramedLinkDiagram) -> FramedLinkDiagram {
        let slices = self
            .slices
            .iter()
            .chain(other.slices.iter())
            .copied()
            .collect();
        let framings = match (&self.framings_given, &other.framings_given) {
            (None, None) => None,
            _ => Some(
                self.framings
                    .iter()
                    .chain(other.framings.iter())
                    .copied()
                    .collect(),
            ),
        };
        FramedLinkDiagram::new(slices, framings).expect("union of closed diagrams is closed")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({ "slices": self.slices });
        if let Some(f) = &self.framings_given {
            v["framings"] = serde_json::json!(f);
        }
        v
    }
}

/// Counts of positive and negative eigenvalues of the linking matrix.
pub fn signature(l: &FramedLinkDiagram) -> (usize, usize) {
    crate::linalg::signature(l.linking_matrix())
}

/// A diagram cut open at one basepoint per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDiagram {
    pub base: FramedLinkDiagram,
    /// One basepoint segment per component; the cut sits at the segment's tail.
    pub basepoints: Vec<Segment>,
    /// Steps of each component in traversal order, starting at its basepoint.
    pub traversals: Vec<Vec<Step>>,
}

/// Cuts every component at the downward strand below its first maximum.
pub fn split(l: &FramedLinkDiagram) -> SplitDiagram {
    let mut basepoints: Vec<Option<Segment>> = vec![None; l.ncomp];
    for (k, s) in l.slices.iter().enumerate() {
        if let Slice::Cap { pos, left_down } = *s {
            let c = l.comps[k + 1][pos];
            if basepoints[c].is_none() {
                let p = if left_down { pos } else { pos + 1 };
                basepoints[c] = Some(Segment {
                    level: k + 1,
                    pos: p,
                });
            }
        }
    }
    let bps = basepoints
        .into_iter()
        .map(|b| b.expect("every closed component has a maximum"))
        .collect();
    split_at(l, bps).expect("canonical basepoints are valid")
}

/// Cuts the diagram at the given segments, one per component.
pub fn split_at(
    l: &FramedLinkDiagram,
    basepoints: Vec<Segment>,
) -> Result<SplitDiagram, DiagramError> {
    if basepoints.len() != l.ncomp {
        return Err(DiagramError::InvalidMove(format!(
            "{} basepoints for {} components",
            basepoints.len(),
            l.ncomp
        )));
    }
    let mut traversals = Vec::with_capacity(l.ncomp);
    for (c, &bp) in basepoints.iter().enumerate() {
        if bp.level >= l.counts.len() || bp.pos >= l.counts[bp.level] || l.component_of(bp) != c {
            return Err(DiagramError::InvalidMove(format!(
                "basepoint {bp:?} is not on component {c}"
            )));
        }
        let mut steps = Vec::new();
        let mut s = bp;
        loop {
            let up = l.direction(s) == Dir::Up;
            let (next, event) = l.step(s);
            steps.push(Step { from: s, event, up });
            s = next;
            if s == bp {
                break;
            }
        }
        traversals.push(steps);
    }
    Ok(SplitDiagram {
        base: l.clone(),
        basepoints,
        traversals,
    })
}

impl SplitDiagram {
    /// All segments of component `c` in traversal order; any of them is a valid basepoint.
    pub fn segments(&self, c: usize) -> Vec<Segment> {
        self.traversals[c].iter().map(|s| s.from).collect()
    }

    /// Rejoins the cut components, returning the underlying closed diagram.
    pub fn reclose(&self) -> FramedLinkDiagram {
        self.base.clone()
    }
}

/// Parses `{"braid": {...}}` or `{"slices": [...], "framings": [...]}`.
pub fn from_json(v: &serde_json::Value) -> Result<FramedLinkDiagram, DiagramError> {
    let err = |m: &str| DiagramError::Json(m.to_string());
    if let Some(b) = v.get("braid") {
        let strands = b
            .get("strands")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| err("braid.strands"))? as usize;
        let word: Vec<i64> = serde_json::from_value(b.get("word").cloned().unwrap_or_default())
            .map_err(|e| DiagramError::Json(format!("braid.word: {e}")))?;
        let framings: Vec<i64> =
            serde_json::from_value(b.get("framings").cloned().unwrap_or_default())
                .map_err(|e| DiagramError::Json(format!("braid.framings: {e}")))?;
        return from_braid_closure(&word, strands, &framings);
    }
    if let Some(s) = v.get("slices") {
        let slices: Vec<Slice> = serde_json::from_value(s.clone())
            .map_err(|e| DiagramError::Json(format!("slices: {e}")))?;
        let framings: Option<Vec<i64>> = match v.get("framings") {
            None | Some(serde_json::Value::Null) => None,
            Some(f) => Some(
                serde_json::from_value(f.clone())
                    .map_err(|e| DiagramError::Json(format!("framings: {e}")))?,
            ),
        };
        return FramedLinkDiagram::new(slices, framings);
    }
    Err(err("expected a \"braid\" or \"slices\" key"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(left_down: bool) -> Vec<Slice> {
        vec![Slice::Cap { pos: 0, left_down }, Slice::Cup { pos: 0 }]
    }

    #[test]
    fn circle_is_one_component() {
        let d = FramedLinkDiagram::new(circle(true), None).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.framings(), &[0]);
        let s = split(&d);
        assert_eq!(s.traversals[0].len(), 2);
        let g: i64 = s.traversals[0]
            .iter()
            .map(|st| match st.event {
                Event::Extremum { g_power } => g_power,
                _ => 0,
            })
            .sum();
        // Counterclockwise: G at the minimum only.
        assert_eq!(g, 1);
        let d2 = FramedLinkDiagram::new(circle(false), None).unwrap();
        let g2: i64 = split(&d2).traversals[0]
            .iter()
            .map(|st| match st.event {
                Event::Extremum { g_power } => g_power,
                _ => 0,
            })
            .sum();
        assert_eq!(g2, -1);
    }

    #[test]
    fn rejects_open_and_misoriented_words() {
        assert_eq!(
            FramedLinkDiagram::new(
                vec![Slice::Cap {
                    pos: 0,
                    left_down: true
                }],
                None
            ),
            Err(DiagramError::NotClosed(2))
        );
        let nested = vec![
            Slice::Cap {
                pos: 0,
                left_down: true,
            },
            Slice::Cap {
                pos: 1,
                left_down: true,
            },
            Slice::Cup { pos: 1 },
            Slice::Cup { pos: 0 },
        ];
        assert!(FramedLinkDiagram::new(nested, None).is_ok());
        let wrong = vec![
            Slice::Cap {
                pos: 0,
                left_down: true,
            },
            Slice::Cap {
                pos: 2,
                left_down: false,
            },
            Slice::Cup { pos: 1 },
        ];
        assert_eq!(
            FramedLinkDiagram::new(wrong, None),
            Err(DiagramError::CupOrientation { slice: 2 })
        );
        assert!(matches!(
            FramedLinkDiagram::new(vec![Slice::Cup { pos: 0 }], None),
            Err(DiagramError::Position { .. })
        ));
    }

    #[test]
    fn twist_slices_set_blackboard_framing() {
        let d = FramedLinkDiagram::new(
            vec![
                Slice::Cap {
                    pos: 0,
                    left_down: true,
                },
                Slice::Twist {
                    pos: 0,
                    positive: true,
                },
                Slice::Twist {
                    pos: 1,
                    positive: true,
                },
                Slice::Cup { pos: 0 },
            ],
            None,
        )
        .unwrap();
        assert_eq!(d.framings(), &[2]);
        assert_eq!(d.signature(), (1, 0));
    }

    #[test]
    fn json_round_trip() {
        let d = FramedLinkDiagram::new(circle(false), Some(vec![3])).unwrap();
        let back = from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
    }
}
