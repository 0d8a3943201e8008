//! Normality from the inequality scan against normality from the
//! codimension-one cells.

mod common;

use common::flag_pairs;
use hessflag_core::classify::{
    codim1_perms, is_normal, is_singular_flag, normality_cross_check, peterson_string_check,
    string_heights, CaseTag,
};
use hessflag_core::combinatorics::{enumerate_hess, flag_in_hess};
use hessflag_core::HessenbergFunction;

#[test]
fn scan_matches_codim1_cells_up_to_n7() {
    for n in 2..=7 {
        for h in enumerate_hess(n).unwrap() {
            assert!(normality_cross_check(&h).unwrap(), "h={h}");
            let restated = (2..n.saturating_sub(1)).any(|i| {
                let before = h.at(i - 1);
                before == i && h.at(i) == i + 1
            });
            assert_eq!(restated, !is_normal(&h).unwrap(), "h={h}");
        }
    }
}

#[test]
fn codim1_perms_are_flags_and_smooth_outside_case_iv_up_to_n6() {
    for n in 2..=6 {
        for h in enumerate_hess(n).unwrap() {
            for p in codim1_perms(&h).unwrap() {
                assert!(flag_in_hess(&p.perm, &h).unwrap(), "h={h} p_{}", p.index);
                if p.case != CaseTag::IV || p.index == 1 || p.index == n - 1 {
                    assert!(
                        !is_singular_flag(&p.perm, &h).unwrap(),
                        "h={h} p_{}",
                        p.index
                    );
                }
            }
        }
    }
}

#[test]
fn atlas_non_normal_lists() {
    let non_normal = |n| -> Vec<String> {
        enumerate_hess(n)
            .unwrap()
            .into_iter()
            .filter(|h| !is_normal(h).unwrap())
            .map(|h| h.to_string())
            .collect()
    };
    assert_eq!(non_normal(4), vec!["2,3,4,4"]);
    let mut five = non_normal(5);
    five.sort();
    assert_eq!(five, vec!["2,3,4,5,5", "2,3,5,5,5", "3,3,4,5,5"]);
}

#[test]
fn peterson_singular_flags_carry_long_strings_up_to_n6() {
    for n in 2..=6 {
        assert!(peterson_string_check(n).unwrap());
        let h = HessenbergFunction::peterson(n);
        let pairs: Vec<_> = flag_pairs(n).into_iter().filter(|(g, _)| *g == h).collect();
        assert_eq!(pairs.len(), 1 << (n - 1));
        for (_, w) in pairs {
            let heights = string_heights(&w, &h).unwrap();
            assert!(
                heights.is_empty() || heights.iter().any(|&d| d + 2 >= n),
                "w={w}"
            );
        }
    }
}
