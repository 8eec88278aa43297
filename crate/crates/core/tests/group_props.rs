//! Group-theoretic bookkeeping around the move engine.

use vlink_core::codec::{builtin, parse_diagram};
use vlink_core::groups::{abelianization, count_homs_s3, three_manifold_group, wirtinger};
use vlink_core::moves::{apply, MoveKind, MoveSite};

/// Sliding one component over another doubles the target's crossings into
/// grid blocks whose relators collapse pairwise; the presentation keeps one
/// relator per crossing and the abelianized 3-manifold group is unchanged.
#[test]
fn handle_slide_relator_bookkeeping() {
    // +1-framed unknot next to a trefoil
    let d = builtin("kink+")
        .unwrap()
        .disjoint_union(&builtin("trefoil").unwrap());
    let before = abelianization(&three_manifold_group(&d));

    for reversed in [false, true] {
        let site = MoveSite::HandleSlide {
            src: 0,
            dst: 1,
            src_pos: 0,
            dst_pos: 0,
            reversed,
        };
        let slid = apply(&d, &site).unwrap();
        let p = three_manifold_group(&slid);
        // one conjugation relator per classical crossing plus one longitude
        // per component
        assert_eq!(
            p.relators.len(),
            slid.crossing_count() + slid.components.len(),
            "reversed = {}",
            reversed
        );
        let after = abelianization(&p);
        assert_eq!(before, after, "reversed = {}", reversed);
    }
}

/// The longitude of each component moves with the slide, so iterated slides
/// keep the homology pinned as well.
#[test]
fn iterated_slides_preserve_homology() {
    let d = parse_diagram("O1+U1+;O2-U2-").unwrap();
    let h0 = abelianization(&three_manifold_group(&d));
    let slid = apply(
        &d,
        &MoveSite::HandleSlide { src: 0, dst: 1, src_pos: 0, dst_pos: 1, reversed: false },
    )
    .unwrap();
    let slid2 = apply(
        &slid,
        &MoveSite::HandleSlide { src: 1, dst: 0, src_pos: 0, dst_pos: 0, reversed: true },
    )
    .unwrap();
    assert_eq!(abelianization(&three_manifold_group(&slid2)), h0);
}

/// Counting maps into S3 separates the trefoil group from the infinite
/// cyclic group even though both abelianize to Z.
#[test]
fn s3_hom_count_separates() {
    let trefoil = wirtinger(&builtin("trefoil").unwrap());
    let vtref = wirtinger(&builtin("vtrefoil").unwrap());
    assert_eq!(abelianization(&trefoil), abelianization(&vtref));
    assert_eq!(count_homs_s3(&vtref), 6);
    assert_eq!(count_homs_s3(&trefoil), 12);
}

/// Kirby stabilization leaves both the group and its homology alone.
#[test]
fn kirby_add_delete_preserve_group() {
    let d = builtin("vtrefoil").unwrap();
    let g0 = abelianization(&three_manifold_group(&d));
    let added = apply(&d, &MoveSite::KirbyAdd { sign: -1 }).unwrap();
    assert_eq!(abelianization(&three_manifold_group(&added)), g0);
}
