//! Singularity of permutation flags, cell verdicts, codimension-one cells,
//! normality, and the Peterson height law.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::combinatorics::{
    enumerate_flags, hess_codim, hess_dim, require_flag, HessenbergFunction, Permutation,
};
use crate::complement::{complement, full_string_heights};
use crate::error::Result;
use crate::jacobian::rank_at_flag;

/// Singular iff the conjugated complement contains a lower diagonal full string.
pub fn is_singular_flag(w: &Permutation, h: &HessenbergFunction) -> Result<bool> {
    Ok(!string_heights(w, h)?.is_empty())
}

/// Heights of the full strings in H^c_w, after checking the preconditions.
pub fn string_heights(w: &Permutation, h: &HessenbergFunction) -> Result<Vec<usize>> {
    h.require_standing()?;
    require_flag(w, h)?;
    Ok(full_string_heights(&complement(w, h)?))
}

/// Singular permutation flags of Hess(N,h) in lexicographic order.
pub fn singular_flags(h: &HessenbergFunction) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for w in enumerate_flags(h)? {
        if is_singular_flag(&w, h)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// What is known about every point of the Hessenberg-Schubert cell of `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellVerdict {
    /// The flag is nonsingular, hence so is every point of its cell.
    NonsingularCell,
    /// A full string of height n-1 or n-2 makes every point singular.
    SingularCell,
    /// The flag is singular but the cell may contain nonsingular points.
    IndeterminateCell,
}

impl fmt::Display for CellVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellVerdict::NonsingularCell => "nonsingular cell",
            CellVerdict::SingularCell => "singular cell",
            CellVerdict::IndeterminateCell => "indeterminate cell",
        })
    }
}

pub fn cell_verdict(w: &Permutation, h: &HessenbergFunction) -> Result<CellVerdict> {
    let heights = string_heights(w, h)?;
    let n = w.n();
    Ok(if heights.is_empty() {
        CellVerdict::NonsingularCell
    } else if heights.iter().any(|&d| d + 1 == n || d + 2 == n) {
        CellVerdict::SingularCell
    } else {
        CellVerdict::IndeterminateCell
    })
}

/// Which of the four one-line formulas produced a codimension-one permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// h(i-1) > i and h(i) > i+1
    I,
    /// h(i-1) > i and h(i) = i+1
    II,
    /// h(i-1) = i and h(i) > i+1
    III,
    /// h(i-1) = i and h(i) = i+1
    IV,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::I => "i",
            CaseTag::II => "ii",
            CaseTag::III => "iii",
            CaseTag::IV => "iv",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// The permutation p_i whose cell has codimension one in Hess(N,h).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Codim1Perm {
    pub index: usize,
    pub case: CaseTag,
    pub perm: Permutation,
}

/// p_1, ..., p_{n-1}, with h(0) taken to be 1.
pub fn codim1_perms(h: &HessenbergFunction) -> Result<Vec<Codim1Perm>> {
    h.require_standing()?;
    let n = h.n();
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let before = if i == 1 { 1 } else { h.at(i - 1) };
        let case = match (before > i, h.at(i) > i + 1) {
            (true, true) => CaseTag::I,
            (true, false) => CaseTag::II,
            (false, true) => CaseTag::III,
            (false, false) => CaseTag::IV,
        };
        let word: Vec<usize> = match case {
            // w0 with positions i and i+1 swapped
            CaseTag::I => {
                let mut word: Vec<usize> = (1..=n).rev().collect();
                word.swap(i - 1, i);
                word
            }
            // n, ..., n+2-i, 1, n+1-i, ..., 2
            CaseTag::II => (n + 2 - i..=n)
                .rev()
                .chain(std::iter::once(1))
                .chain((2..=n + 1 - i).rev())
                .collect(),
            // n-1, ..., n-i, n, n-i-1, ..., 1
            CaseTag::III => (n - i..n)
                .rev()
                .chain(std::iter::once(n))
                .chain((1..n - i).rev())
                .collect(),
            // i, ..., 1, n, ..., i+1
            CaseTag::IV => (1..=i).rev().chain((i + 1..=n).rev()).collect(),
        };
        out.push(Codim1Perm {
            index: i,
            case,
            perm: Permutation::new(word)?,
        });
    }
    Ok(out)
}

/// Normal iff every 1 < i < n-1 has h(i-1) > i or h(i) > i+1.
pub fn is_normal(h: &HessenbergFunction) -> Result<bool> {
    h.require_standing()?;
    let n = h.n();
    Ok((2..n.saturating_sub(1)).all(|i| h.at(i - 1) > i || h.at(i) > i + 1))
}

/// For the Peterson function of size n: every singular permutation flag has
/// a full string of height n-1 or n-2.
pub fn peterson_string_check(n: usize) -> Result<bool> {
    let h = HessenbergFunction::peterson(n);
    for w in enumerate_flags(&h)? {
        let heights = string_heights(&w, &h)?;
        if !heights.is_empty() && !heights.iter().any(|&d| d + 1 == n || d + 2 == n) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Re-derives normality from the codimension-one cells: Hess(N,h) fails to be
/// normal exactly when some case (iv) p_i with 1 < i < n-1 carries the string
/// {(n-1,1),(n,2)}. Also requires p_1, p_{n-1} and every p_i of cases
/// (i)-(iii) to be nonsingular flags.
pub fn normality_cross_check(h: &HessenbergFunction) -> Result<bool> {
    let n = h.n();
    let mut offending = false;
    for p in codim1_perms(h)? {
        let c = complement(&p.perm, h)?;
        let interior = p.index > 1 && p.index + 1 < n;
        if p.case == CaseTag::IV && interior && n >= 3 && c.contains_string(n - 1) {
            offending = true;
        }
        let must_be_smooth = p.case != CaseTag::IV || !interior;
        if must_be_smooth && is_singular_flag(&p.perm, h)? {
            return Ok(false);
        }
    }
    Ok(offending != is_normal(h)?)
}

/// One permutation flag in a [`VarietyReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagRecord {
    pub w: Permutation,
    pub singular: bool,
    pub string_heights: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobian_rank: Option<usize>,
}

/// Classifies one flag, optionally confirming with the Jacobian rank.
pub fn flag_record(
    w: &Permutation,
    h: &HessenbergFunction,
    with_jacobian: bool,
) -> Result<FlagRecord> {
    let string_heights = string_heights(w, h)?;
    let jacobian_rank = if with_jacobian {
        Some(rank_at_flag(w, h)?)
    } else {
        None
    };
    Ok(FlagRecord {
        w: w.clone(),
        singular: !string_heights.is_empty(),
        string_heights,
        jacobian_rank,
    })
}

/// A codimension-one permutation together with its cell verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Codim1Record {
    pub index: usize,
    pub case: CaseTag,
    pub perm: Permutation,
    pub verdict: CellVerdict,
}

/// Everything the library decides about one Hessenberg function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarietyReport {
    pub h: HessenbergFunction,
    pub n: usize,
    pub dim: usize,
    pub codim: usize,
    pub normal: bool,
    pub num_flags: usize,
    pub num_singular_flags: usize,
    pub codim1: Vec<Codim1Record>,
    pub flags: Vec<FlagRecord>,
}

impl VarietyReport {
    /// Assembles a report from per-flag records, which must cover
    /// `enumerate_flags(h)` in order.
    pub fn assemble(h: &HessenbergFunction, flags: Vec<FlagRecord>) -> Result<Self> {
        let codim1 = codim1_perms(h)?
            .into_iter()
            .map(|p| {
                Ok(Codim1Record {
                    verdict: cell_verdict(&p.perm, h)?,
                    index: p.index,
                    case: p.case,
                    perm: p.perm,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VarietyReport {
            h: h.clone(),
            n: h.n(),
            dim: hess_dim(h)?,
            codim: hess_codim(h)?,
            normal: is_normal(h)?,
            num_flags: flags.len(),
            num_singular_flags: flags.iter().filter(|f| f.singular).count(),
            codim1,
            flags,
        })
    }

    pub fn singular_flags(&self) -> impl Iterator<Item = &Permutation> {
        self.flags.iter().filter(|f| f.singular).map(|f| &f.w)
    }
}

/// Sequential report over all permutation flags of Hess(N,h).
pub fn variety_report(h: &HessenbergFunction, with_jacobian: bool) -> Result<VarietyReport> {
    let flags = enumerate_flags(h)?
        .iter()
        .map(|w| flag_record(w, h, with_jacobian))
        .collect::<Result<Vec<_>>>()?;
    VarietyReport::assemble(h, flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_hess;
    use crate::error::Error;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn hf(s: &str) -> HessenbergFunction {
        s.parse().unwrap()
    }

    fn perms(ws: &[&str]) -> Vec<Permutation> {
        ws.iter().map(|s| p(s)).collect()
    }

    #[test]
    fn singular_flag_examples() {
        assert!(is_singular_flag(&p("32154"), &hf("3,3,4,5,5")).unwrap());
        assert!(is_singular_flag(&p("321654"), &hf("3,4,5,6,6,6")).unwrap());
        for n in 2..=6 {
            for h in enumerate_hess(n).unwrap() {
                assert!(!is_singular_flag(&Permutation::longest(n), &h).unwrap());
            }
        }
        assert!(matches!(
            is_singular_flag(&p("123"), &hf("1,3,3")),
            Err(Error::StandingAssumption(_))
        ));
        assert!(matches!(
            is_singular_flag(&p("54312"), &hf("2,3,4,5,5")),
            Err(Error::FlagNotInVariety { .. })
        ));
    }

    #[test]
    fn singular_flags_table() {
        let expected = perms(&[
            "12345", "12354", "12435", "13245", "13254", "14325", "21345", "21354", "21435",
            "23145", "23154", "31245", "31254", "32145", "32154", "41325",
        ]);
        assert_eq!(singular_flags(&hf("3,3,4,5,5")).unwrap(), expected);
        assert!(singular_flags(&HessenbergFunction::full(5))
            .unwrap()
            .is_empty());
        assert!(!singular_flags(&hf("2,3,4,4")).unwrap().is_empty());
    }

    #[test]
    fn verdict_examples() {
        let h = hf("3,4,4,5,6,6");
        assert_eq!(
            cell_verdict(&p("312654"), &h).unwrap(),
            CellVerdict::IndeterminateCell
        );
        assert_eq!(
            cell_verdict(&p("564321"), &h).unwrap(),
            CellVerdict::NonsingularCell
        );
        assert_eq!(
            cell_verdict(&p("321654"), &hf("3,4,5,6,6,6")).unwrap(),
            CellVerdict::IndeterminateCell
        );
        assert_eq!(
            cell_verdict(&p("32154"), &hf("3,3,4,5,5")).unwrap(),
            CellVerdict::SingularCell
        );
    }

    #[test]
    fn codim1_example_n7() {
        let got: Vec<String> = codim1_perms(&hf("2,4,5,5,6,7,7"))
            .unwrap()
            .iter()
            .map(|c| c.perm.to_string())
            .collect();
        assert_eq!(
            got,
            ["1765432", "6574321", "7645321", "7651432", "5432176", "6543217"]
        );
    }

    #[test]
    fn codim1_small_case_tags() {
        let got: Vec<(usize, CaseTag, String)> = codim1_perms(&hf("3,3,4,4"))
            .unwrap()
            .into_iter()
            .map(|c| (c.index, c.case, c.perm.to_string()))
            .collect();
        assert_eq!(
            got,
            vec![
                (1, CaseTag::III, "3421".to_string()),
                (2, CaseTag::II, "4132".to_string()),
                (3, CaseTag::IV, "3214".to_string()),
            ]
        );
    }

    #[test]
    fn peterson_codim1_are_parabolic_longest_elements() {
        for n in 2..=7 {
            for c in codim1_perms(&HessenbergFunction::peterson(n)).unwrap() {
                assert_eq!(c.case, CaseTag::IV);
                let i = c.index;
                let expected: Vec<usize> = (1..=i).rev().chain((i + 1..=n).rev()).collect();
                assert_eq!(c.perm.word(), expected.as_slice());
            }
        }
    }

    /// The one-line formulas against products of simple transpositions.
    #[test]
    fn codim1_formulas_match_reduced_words() {
        let compose_all = |n: usize, idx: &[usize]| {
            idx.iter().fold(Permutation::longest(n), |acc, &k| {
                acc.compose(&Permutation::simple_transposition(n, k).unwrap())
                    .unwrap()
            })
        };
        for n in 3..=7 {
            for h in enumerate_hess(n).unwrap() {
                for c in codim1_perms(&h).unwrap() {
                    let i = c.index;
                    let expected = match c.case {
                        CaseTag::I => compose_all(n, &[i]),
                        CaseTag::II => compose_all(n, &(i..n).rev().collect::<Vec<_>>()),
                        CaseTag::III => compose_all(n, &(1..=i).collect::<Vec<_>>()),
                        CaseTag::IV => continue,
                    };
                    assert_eq!(c.perm, expected, "h={h} i={i}");
                }
            }
        }
    }

    #[test]
    fn normality_examples() {
        let non_normal: Vec<HessenbergFunction> = enumerate_hess(4)
            .unwrap()
            .into_iter()
            .filter(|h| !is_normal(h).unwrap())
            .collect();
        assert_eq!(non_normal, vec![hf("2,3,4,4")]);
        assert!(!is_normal(&hf("3,3,4,5,5")).unwrap());
        for n in 2..=3 {
            for h in enumerate_hess(n).unwrap() {
                assert!(is_normal(&h).unwrap());
            }
        }
    }

    #[test]
    fn peterson_heights() {
        for n in 2..=6 {
            assert!(peterson_string_check(n).unwrap());
        }
    }

    #[test]
    fn cross_check_examples() {
        let h = hf("3,3,4,5,5");
        let p3 = &codim1_perms(&h).unwrap()[2];
        assert_eq!(p3.perm, p("32154"));
        assert!(string_heights(&p3.perm, &h).unwrap().contains(&3));
        assert!(normality_cross_check(&h).unwrap());

        let h = hf("2,3,4,5,5");
        let cs = codim1_perms(&h).unwrap();
        assert_eq!(
            (cs[1].perm.clone(), cs[2].perm.clone()),
            (p("21543"), p("32154"))
        );
        assert!(is_singular_flag(&cs[1].perm, &h).unwrap());
        assert!(is_singular_flag(&cs[2].perm, &h).unwrap());

        for h in enumerate_hess(5).unwrap() {
            assert!(normality_cross_check(&h).unwrap(), "h={h}");
            if is_normal(&h).unwrap() {
                for c in codim1_perms(&h).unwrap() {
                    assert!(!is_singular_flag(&c.perm, &h).unwrap());
                }
            }
        }
    }

    #[test]
    fn report_for_offending_function() {
        let r = variety_report(&hf("3,3,4,5,5"), true).unwrap();
        assert!(!r.normal);
        assert_eq!(r.num_singular_flags, 16);
        assert_eq!((r.dim, r.codim), (5, 5));
        for f in &r.flags {
            assert_eq!(f.jacobian_rank.unwrap() < r.codim, f.singular);
        }
        assert_eq!(r.codim1.len(), 4);
    }
}
