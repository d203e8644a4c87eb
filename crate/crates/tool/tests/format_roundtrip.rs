use mbs_core::families::{gen_rp2, gen_x1, gen_x2, gen_x3};
use mbs_core::MultibranchedSurface;
use mbs_tool::format::{parse, serialize, ParseError};
use proptest::prelude::*;

fn id() -> impl Strategy<Value = String> {
    "[A-Za-z0-9_]{1,6}"
}

/// Random valid surfaces with random ids, genera and attachment orders.
fn arb_surface() -> impl Strategy<Value = MultibranchedSurface> {
    (
        proptest::collection::btree_set(id(), 1..4),
        proptest::collection::btree_set(id(), 1..4),
    )
        .prop_flat_map(|(branches, sectors)| {
            let branches: Vec<String> = branches.into_iter().collect();
            let sectors: Vec<String> = sectors.into_iter().collect();
            let nb = branches.len();
            let att = (0..nb, (-5i64..=5).prop_filter("nonzero", |d| *d != 0));
            let per_sector = (0u32..1000, proptest::collection::vec(att, 1..4));
            (
                Just(branches),
                Just(sectors.clone()),
                proptest::collection::vec(per_sector, sectors.len()),
            )
        })
        .prop_filter_map("invalid", |(branches, sectors, data)| {
            let mut b = MultibranchedSurface::builder();
            for l in &branches {
                b.branch(l).ok()?;
            }
            for (s, (genus, atts)) in sectors.iter().zip(&data) {
                b.sector(s, *genus).ok()?;
                for &(l, d) in atts {
                    b.attach(s, &branches[l], d).ok()?;
                }
            }
            b.build().ok()
        })
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(x in arb_surface()) {
        let text = serialize(&x);
        prop_assert_eq!(parse(&text).unwrap(), x.clone());
        prop_assert_eq!(serialize(&parse(&text).unwrap()), text);
    }

    #[test]
    fn comments_and_spacing_are_ignored(x in arb_surface(), pad in "[ \t]{0,3}") {
        let decorated: String = serialize(&x)
            .lines()
            .map(|l| format!("{pad}{}{pad}  # note\n\n", l.replace(' ', &format!(" {pad}"))))
            .collect();
        prop_assert_eq!(parse(&decorated).unwrap(), x);
    }
}

#[test]
fn families_round_trip() {
    let xs = [
        gen_rp2(),
        gen_x1(&[3, -1, 2]).unwrap(),
        gen_x2(4).unwrap(),
        gen_x3(&[1, 1, 1]).unwrap(),
        gen_x3(&[2, 3]).unwrap(),
    ];
    for x in xs {
        assert_eq!(parse(&serialize(&x)).unwrap(), x);
    }
}

#[test]
fn rp2_is_three_lines() {
    assert_eq!(serialize(&gen_rp2()).lines().count(), 3);
}

#[test]
fn use_before_declaration_is_rejected() {
    let err = parse("sector e genus 0\nattach e l 2\nbranch l\n").unwrap_err();
    assert!(matches!(err, ParseError::Model { line: 2, .. }), "{err}");
    assert!(err.to_string().starts_with("line 2:"));
}
