//! Brute-force reference for finite Vitali selections.

use ldt_core::Ball;

fn disjoint(a: &Ball, b: &Ball) -> bool {
    (a.center() - b.center()).abs() >= a.radius() + b.radius()
}

fn covers(selected: &Ball, ball: &Ball) -> bool {
    let meets = (selected.center() - ball.center()).abs() < selected.radius() + ball.radius();
    let r3 = 3.0 * selected.radius();
    meets
        && selected.radius() >= ball.radius()
        && selected.center() - r3 <= ball.center() - ball.radius()
        && ball.center() + ball.radius() <= selected.center() + r3
}

/// Every pairwise-disjoint subcollection, as bit masks, whose members
/// dominate and 3×-cover each input ball.
pub fn feasible_selections(balls: &[Ball]) -> Vec<u32> {
    assert!(balls.len() <= 20, "brute force is limited to 20 balls");
    let n = balls.len();
    (0u32..1 << n)
        .filter(|&mask| {
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let pairwise = members
                .iter()
                .enumerate()
                .all(|(a, &i)| members[a + 1..].iter().all(|&j| disjoint(&balls[i], &balls[j])));
            pairwise && balls.iter().all(|b| members.iter().any(|&j| covers(&balls[j], b)))
        })
        .collect()
}

/// Whether `selection` is among the feasible subcollections.
pub fn vitali_oracle(balls: &[Ball], selection: &[usize]) -> bool {
    let mut mask = 0u32;
    for &j in selection {
        if j >= balls.len() || mask >> j & 1 == 1 {
            return false;
        }
        mask |= 1 << j;
    }
    feasible_selections(balls).contains(&mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_ball_example() {
        let balls: Vec<Ball> =
            [(0.0, 1.0), (1.0, 1.0), (2.0, 1.0)].iter().map(|&(c, r)| Ball::new(c, r).unwrap()).collect();
        assert!(vitali_oracle(&balls, &[0, 2]));
        assert!(!vitali_oracle(&balls, &[0, 1]));
        assert!(vitali_oracle(&balls, &[1]));
        assert!(!vitali_oracle(&balls, &[0]));
        assert!(!vitali_oracle(&balls, &[0, 0, 2]));
    }
}
