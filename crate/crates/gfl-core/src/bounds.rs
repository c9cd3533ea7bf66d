//! Closed-form bound tables for the smallest order forcing a
//! monochromatic fan in every rainbow-triangle-free coloring.
//!
//! Each row gives lower and upper bounds on that threshold for `k`
//! colors; `exact` is set when they coincide. The lower bound always
//! exceeds the matching construction's order by exactly one.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One table row: bounds for palette size `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub k: u32,
    pub lower: u64,
    pub upper: u64,
    /// Set iff `lower == upper`.
    pub exact: Option<u64>,
}

impl BoundRow {
    fn exact(k: u32, v: u64) -> Self {
        Self { k, lower: v, upper: v, exact: Some(v) }
    }

    fn range(k: u32, lower: u64, upper: u64) -> Self {
        debug_assert!(lower < upper);
        Self { k, lower, upper, exact: None }
    }
}

/// Which fan family a table describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundFamily {
    /// The bowtie, two triangles at a shared center.
    F2,
    /// Three triangles at a shared center.
    F3,
    /// `n` triangles at a shared center; carries `n >= 2`.
    Fn(u32),
}

const K_MAX_LIMIT: u32 = 20;

fn pow5(e: u32) -> u64 {
    5u64.pow(e)
}

fn check_k_max(k_max: u32) -> Result<()> {
    if !(2..=K_MAX_LIMIT).contains(&k_max) {
        return Err(Error::Param(format!("k_max {k_max} outside 2..={K_MAX_LIMIT}")));
    }
    Ok(())
}

fn f2_row(k: u32) -> BoundRow {
    let v = match k {
        2 => 9,
        _ if k % 2 == 0 => (83 * pow5((k - 4) / 2) + 1) / 2,
        _ => 4 * pow5((k - 1) / 2) + 1,
    };
    BoundRow::exact(k, v)
}

fn f3_row(k: u32) -> BoundRow {
    match k {
        _ if k % 2 == 0 => BoundRow::exact(k, 14 * pow5((k - 2) / 2) - 1),
        3 | 5 => BoundRow::exact(k, 33 * pow5((k - 3) / 2)),
        _ => {
            let lower = 33 * pow5((k - 3) / 2);
            let upper = lower + 3 * (pow5((k - 5) / 2) - 1) / 4;
            BoundRow::range(k, lower, upper)
        }
    }
}

fn fn_row(n: u32, k: u32) -> BoundRow {
    let n64 = n as u64;
    if k % 2 == 0 {
        let e = (k - 2) / 2;
        let lower = 4 * n64 * pow5(e) + 1;
        // 10n*5^e - (5/2)n + 1, rounded down.
        let upper = (20 * n64 * pow5(e) - 5 * n64 + 2) / 2;
        BoundRow::range(k, lower, upper)
    } else {
        let e = (k - 1) / 2;
        let lower = 2 * n64 * pow5(e) + 1;
        // (9/2)n*5^e - (5/2)n + 1; always an integer.
        let upper = (9 * n64 * pow5(e) - 5 * n64 + 2) / 2;
        BoundRow::range(k, lower, upper)
    }
}

/// Rows `k = 2..=k_max` for a family. `k_max` must lie in `2..=20`;
/// the generic family needs `n >= 2`.
pub fn bound_table(family: BoundFamily, k_max: u32) -> Result<Vec<BoundRow>> {
    check_k_max(k_max)?;
    let row: fn(u32) -> BoundRow;
    match family {
        BoundFamily::F2 => row = f2_row,
        BoundFamily::F3 => row = f3_row,
        BoundFamily::Fn(n) => {
            if n < 2 {
                return Err(Error::Param(format!("generic fan table needs n >= 2, got {n}")));
            }
            return Ok((2..=k_max).map(|k| fn_row(n, k)).collect());
        }
    }
    Ok((2..=k_max).map(row).collect())
}

/// Thresholds indexed by the number of useful colors `k'` (colors whose
/// subgraph has a vertex of degree 2) instead of the palette size; rows
/// `k' = 0..=kprime_max`. Row 0 is the rainbow-forcing threshold 3.
pub fn useful_color_table(kprime_max: u32) -> Result<Vec<BoundRow>> {
    if kprime_max > K_MAX_LIMIT {
        return Err(Error::Param(format!("k'_max {kprime_max} outside 0..={K_MAX_LIMIT}")));
    }
    Ok((0..=kprime_max)
        .map(|kp| {
            let v = match kp {
                0 => 3,
                _ if kp % 2 == 0 => 2 * pow5(kp / 2) + 1,
                _ => 4 * pow5((kp - 1) / 2) + 1,
            };
            BoundRow::exact(kp, v)
        })
        .collect())
}

/// Two-coloring threshold for the order-`n` fan: exact at 9 for `n = 2`
/// and 13 for `n = 3`, otherwise bounded by `4n + 1` and `6n`.
pub fn fan_ramsey_row(n: u32) -> Result<BoundRow> {
    if n == 0 {
        return Err(Error::Param(String::from("fan order must be at least 1")));
    }
    Ok(match n {
        2 => BoundRow::exact(2, 9),
        3 => BoundRow::exact(2, 13),
        _ => BoundRow { k: 2, lower: 4 * n as u64 + 1, upper: 6 * n as u64, exact: None },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct_f2_even, construct_f2_odd, construct_f3, construct_fn};

    #[test]
    fn f2_table_known_values() {
        let t = bound_table(BoundFamily::F2, 10).unwrap();
        let exact: Vec<u64> = t.iter().map(|r| r.exact.unwrap()).collect();
        assert_eq!(exact, vec![9, 21, 42, 101, 208, 501, 1038, 2501, 5188]);
        assert_eq!(t[0].k, 2);
    }

    #[test]
    fn f3_table_known_values() {
        let t = bound_table(BoundFamily::F3, 9).unwrap();
        assert_eq!(t[0], BoundRow::exact(2, 13));
        assert_eq!(t[1], BoundRow::exact(3, 33));
        assert_eq!(t[2], BoundRow::exact(4, 69));
        assert_eq!(t[3], BoundRow::exact(5, 165));
        assert_eq!(t[4], BoundRow::exact(6, 349));
        assert_eq!(t[5], BoundRow { k: 7, lower: 825, upper: 828, exact: None });
        assert_eq!(t[6], BoundRow::exact(8, 1749));
        assert_eq!(t[7].lower, 4125);
        assert_eq!(t[7].upper, 4125 + 3 * (25 - 1) / 4);
    }

    #[test]
    fn fn_table_known_values() {
        let t = bound_table(BoundFamily::Fn(4), 8).unwrap();
        let k3 = t.iter().find(|r| r.k == 3).unwrap();
        assert_eq!((k3.lower, k3.upper), (41, 81));
        let k2 = &t[0];
        assert_eq!((k2.lower, k2.upper), (17, 31));
        assert!(bound_table(BoundFamily::Fn(1), 8).is_err());
        assert!(bound_table(BoundFamily::F2, 1).is_err());
        assert!(bound_table(BoundFamily::F2, 21).is_err());
    }

    #[test]
    fn useful_table_known_values() {
        let t = useful_color_table(6).unwrap();
        let exact: Vec<u64> = t.iter().map(|r| r.exact.unwrap()).collect();
        assert_eq!(exact, vec![3, 5, 11, 21, 51, 101, 251]);
    }

    #[test]
    fn fan_ramsey_known_values() {
        assert_eq!(fan_ramsey_row(2).unwrap().exact, Some(9));
        assert_eq!(fan_ramsey_row(3).unwrap().exact, Some(13));
        let r4 = fan_ramsey_row(4).unwrap();
        assert_eq!((r4.lower, r4.upper), (17, 24));
        assert!(fan_ramsey_row(0).is_err());
    }

    #[test]
    fn lower_bounds_match_construction_orders() {
        for k in [3, 5, 7] {
            let row = f2_row(k);
            assert_eq!(construct_f2_odd(k).unwrap().order() as u64, row.lower - 1);
        }
        for k in [2, 4, 6] {
            let row = f2_row(k);
            assert_eq!(construct_f2_even(k).unwrap().order() as u64, row.lower - 1);
        }
        for k in 2..=7 {
            let row = f3_row(k);
            assert_eq!(construct_f3(k).unwrap().order() as u64, row.lower - 1);
        }
        for n in 2..=5 {
            for k in 2..=5 {
                let row = fn_row(n, k);
                assert_eq!(construct_fn(n, k).unwrap().order() as u64, row.lower - 1);
            }
        }
    }
}
