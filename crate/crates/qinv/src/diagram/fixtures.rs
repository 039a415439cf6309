//! Named surgery presentations used by the tests and the CLI.
//!
//! Names: `empty`, `unknot:F`, `curl:+1`/`curl:-1` (blackboard-framed curl),
//! `twist:F` (circle with |F| twist slices), `hopf:F1,F2`, `trefoil:F`,
//! `lens:K` (the K-framed unknot, presenting L(K,1)), `s1xs2`, `s1xs2_coupon`,
//! `coupon_cancel`, `s3_markov`, `slide:A,K` and `unslid:A,K` (a handle-slide pair).

use super::braid::BraidWord;
use super::{from_braid_closure, DiagramError, FramedLinkDiagram, Slice};

pub fn empty() -> FramedLinkDiagram {
    FramedLinkDiagram::new(Vec::new(), Some(Vec::new())).expect("empty diagram")
}

pub fn unknot(f: i64) -> FramedLinkDiagram {
    from_braid_closure(&[], 1, &[f]).expect("unknot")
}

/// A one-crossing diagram of the unknot with blackboard framing `sign`.
pub fn curl(positive: bool) -> FramedLinkDiagram {
    BraidWord::new(2, vec![if positive { 1 } else { -1 }])
        .expect("valid")
        .blackboard_closure()
}

/// A clockwise circle carrying |f| twist slices of sign f, blackboard framed.
pub fn twisted_circle(f: i64) -> FramedLinkDiagram {
    let mut s = vec![Slice::Cap {
        pos: 0,
        left_down: false,
    }];
    s.extend((0..f.unsigned_abs()).map(|_| Slice::Twist {
        pos: 1,
        positive: f > 0,
    }));
    s.push(Slice::Cup { pos: 0 });
    FramedLinkDiagram::new(s, None).expect("twisted circle")
}

pub fn hopf(f1: i64, f2: i64) -> FramedLinkDiagram {
    from_braid_closure(&[1, 1], 2, &[f1, f2]).expect("hopf")
}

pub fn trefoil(f: i64) -> FramedLinkDiagram {
    from_braid_closure(&[1, 1, 1], 2, &[f]).expect("trefoil")
}

/// L(k,1) as surgery on the k-framed unknot.
pub fn lens(k: i64) -> FramedLinkDiagram {
    unknot(k)
}

/// S¹×S² as a single free-standing coupon.
pub fn s1xs2_coupon() -> FramedLinkDiagram {
    FramedLinkDiagram::new(vec![Slice::Coupon { pos: 0, width: 0 }], Some(Vec::new()))
        .expect("coupon")
}

/// A 0-framed unknot through a width-1 coupon: a cancelling 1-handle/2-handle pair.
pub fn coupon_cancel() -> FramedLinkDiagram {
    FramedLinkDiagram::new(
        vec![
            Slice::Cap {
                pos: 0,
                left_down: false,
            },
            Slice::Coupon { pos: 1, width: 1 },
            Slice::Cup { pos: 0 },
        ],
        Some(vec![0]),
    )
    .expect("coupon on unknot")
}

/// The +1-framed unknot after two stabilizations and a conjugation.
pub fn s3_markov() -> FramedLinkDiagram {
    from_braid_closure(&[1, 1, -2, -1], 3, &[1]).expect("stabilized unknot")
}

/// The result of sliding an unknot with framing `a` over a split unknot with
/// framing `k`: the (2,2k) torus link with framings (a+k, k).
pub fn slide(a: i64, k: i64) -> FramedLinkDiagram {
    if k == 0 {
        return unslid(a, 0);
    }
    let word = vec![k.signum(); 2 * k.unsigned_abs() as usize];
    from_braid_closure(&word, 2, &[a + k, k]).expect("torus link")
}

/// The split union unknot(a) ⊔ unknot(k), before the slide.
pub fn unslid(a: i64, k: i64) -> FramedLinkDiagram {
    unknot(a).disjoint_union(&unknot(k))
}

fn parse_ints(arg: &str) -> Option<Vec<i64>> {
    arg.split(',')
        .map(|t| t.trim().trim_start_matches('+').parse().ok())
        .collect()
}

/// Looks up a fixture by name.
pub fn by_name(name: &str) -> Result<FramedLinkDiagram, DiagramError> {
    let bad = || DiagramError::Json(format!("unknown fixture {name:?}"));
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let ints = |n: usize| -> Result<Vec<i64>, DiagramError> {
        let v = arg.and_then(parse_ints).ok_or_else(bad)?;
        if v.len() == n {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    Ok(match head {
        "empty" => empty(),
        "unknot" => unknot(ints(1)?[0]),
        "curl" => curl(ints(1)?[0] > 0),
        "twist" => twisted_circle(ints(1)?[0]),
        "hopf" => {
            let f = ints(2)?;
            hopf(f[0], f[1])
        }
        "trefoil" => trefoil(ints(1)?[0]),
        "lens" => lens(ints(1)?[0]),
        "s1xs2" => unknot(0),
        "s1xs2_coupon" => s1xs2_coupon(),
        "coupon_cancel" => coupon_cancel(),
        "s3_markov" => s3_markov(),
        "slide" => {
            let f = ints(2)?;
            slide(f[0], f[1])
        }
        "unslid" => {
            let f = ints(2)?;
            unslid(f[0], f[1])
        }
        _ => return Err(bad()),
    })
}

/// The fixture set of the Hennings/RT comparison: unknot(f) for |f| ≤ 3,
/// Hopf(f₁,f₂) for |fᵢ| ≤ 2, trefoil(0) and L(k,1) for k ≤ 6.
pub fn comparison_set() -> Vec<(String, FramedLinkDiagram)> {
    let mut out = Vec::new();
    for f in -3..=3 {
        out.push((format!("unknot:{f}"), unknot(f)));
    }
    for f1 in -2..=2 {
        for f2 in -2..=2 {
            out.push((format!("hopf:{f1},{f2}"), hopf(f1, f2)));
        }
    }
    out.push(("trefoil:0".into(), trefoil(0)));
    for k in 0..=6 {
        out.push((format!("lens:{k}"), lens(k)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for n in [
            "empty",
            "unknot:3",
            "curl:-1",
            "twist:2",
            "hopf:1,-2",
            "trefoil:0",
            "lens:4",
            "s1xs2",
        ] {
            by_name(n).unwrap();
        }
        for n in [
            "s1xs2_coupon",
            "coupon_cancel",
            "s3_markov",
            "slide:0,2",
            "unslid:1,-1",
        ] {
            by_name(n).unwrap();
        }
        assert!(by_name("hopf:1").is_err());
        assert!(by_name("nope").is_err());
    }

    #[test]
    fn markov_presentation_is_the_plus_one_unknot() {
        let d = s3_markov();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.linking_matrix(), &[vec![1]]);
    }

    #[test]
    fn slide_pair_linking_data() {
        let s = slide(0, 3);
        assert_eq!(s.linking_matrix(), &[vec![3, 3], vec![3, 3]]);
        let u = unslid(0, 3);
        assert_eq!(u.linking_matrix(), &[vec![0, 0], vec![0, 3]]);
        assert_eq!(s.signature(), u.signature());
        assert_eq!(slide(2, -1).linking_matrix(), &[vec![1, -1], vec![-1, -1]]);
    }

    #[test]
    fn twisted_circle_framing() {
        assert_eq!(twisted_circle(-3).framings(), &[-3]);
        assert_eq!(curl(true).framings(), &[1]);
        assert_eq!(curl(false).framings(), &[-1]);
    }

    #[test]
    fn coupon_fixtures_have_no_linking_data() {
        assert_eq!(s1xs2_coupon().component_count(), 0);
        assert_eq!(coupon_cancel().coupons(), &[(1, 1)]);
    }
}
