//! Closed-form game values for the (family, game) pairs that have one.
//! Anything outside the table is reported as unresolved rather than guessed.

use serde::Serialize;

use crate::engine::{GameSpec, Pattern, Player};
use crate::families::{FamilyInstance, FamilyTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    Value(usize),
    Unresolved,
}

impl Prediction {
    pub fn value(self) -> Option<usize> {
        match self {
            Prediction::Value(v) => Some(v),
            Prediction::Unresolved => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum P3 {
    Star,
    Stripe,
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

fn is_unrooted_claw(p: &Pattern) -> bool {
    match p {
        Pattern::Generic(gp) => {
            let f = gp.graph();
            gp.root().is_none() && f.n() == 4 && f.edge_count() == 3 && (0..4).any(|v| f.degree(v) == 3)
        }
        _ => false,
    }
}

pub fn closed_form(inst: &FamilyInstance, spec: &GameSpec) -> Prediction {
    let rooted = match spec.pattern {
        Pattern::Star => Some(P3::Star),
        Pattern::Stripe => Some(P3::Stripe),
        _ => None,
    };
    let p = |k: &str| inst.param(k).unwrap_or(0);
    let init = spec.initiator;
    use FamilyTag as T;
    use Player::{Max, Min};
    let value = match (inst.tag, rooted) {
        (T::ClawGadget, None) if is_unrooted_claw(&spec.pattern) && init == Min => Some(1),
        (_, None) => None,
        (T::Path, Some(kind)) => {
            let n = p("n");
            match (n >= 3, kind, init) {
                (false, _, _) => None,
                (true, P3::Stripe, Min) => Some((n + 1) / 4),
                (true, P3::Star, Min) => Some((n + 2) / 5),
                (true, _, Max) => Some(n / 3),
            }
        }
        (T::CompleteBipartite, Some(_)) => {
            let (r, s) = (p("r").min(p("s")), p("r").max(p("s")));
            (s >= 2).then(|| match init {
                Max => r.min((r + s) / 3),
                Min => ceil_div(r, 2),
            })
        }
        (T::Grid, Some(kind)) => {
            let (rows, m) = (p("rows"), p("cols"));
            match (rows, kind, init) {
                (2, P3::Star, _) if m >= 2 => Some(ceil_div(m, 2)),
                (2, P3::Stripe, Min) if m >= 2 => Some(ceil_div(m, 2)),
                (2, P3::Stripe, Max) if m >= 2 => Some(m / 2),
                (3, P3::Star, Max) => Some(m),
                (3, P3::Stripe, Max) if m >= 2 => Some(if m == 3 { m } else { m - 1 }),
                _ => None,
            }
        }
        (T::Comb, Some(_)) if init == Min => Some(ceil_div(p("m"), 2)),
        (T::DoubleCoronaComplete, Some(P3::Star)) if init == Max && p("m") % 3 == 0 => Some(p("m") / 3),
        (T::Caterpillar, Some(_)) if init == Max => Some(ceil_div(p("m"), 2)),
        (T::FamilyD, Some(P3::Star)) if init == Min => Some(p("m")),
        (T::FamilyE, Some(P3::Star)) if init == Max => Some(p("k")),
        (T::FamilyF, Some(P3::Stripe)) if init == Max => Some(p("k")),
        (T::MopFan6 | T::MopSnake6 | T::MopSun6, Some(kind)) => {
            Some(if kind == P3::Stripe && init == Max { 1 } else { 2 })
        }
        (T::MopCustom, Some(_)) if p("n") == 3 => Some(1),
        (T::Rooks2, Some(kind)) => {
            let m = p("m");
            match (m % 3 == 0 && m > 0, kind, init) {
                (false, _, _) => None,
                (true, _, Min) | (true, P3::Star, Max) => Some(2 * m / 3),
                (true, P3::Stripe, Max) => Some(if m == 3 { 2 } else { 2 * m / 3 - 1 }),
            }
        }
        _ => None,
    };
    value.map_or(Prediction::Unresolved, Prediction::Value)
}

/// Value of the stripe game on a path with Maximizer responding, computed
/// by the one-dimensional recurrence: Minimizer initiates at position `k`
/// and the responder takes the stripe toward either side.
pub fn recurrence_f(n: usize) -> usize {
    let mut f = vec![0usize; n + 1];
    for len in 3..=n {
        let mut best = usize::MAX;
        for k in 1..=len {
            let forward = (k + 2 <= len).then(|| f[k - 1] + f[len - k - 2]);
            let backward = (k >= 3).then(|| f[k - 3] + f[len - k]);
            if let Some(worst) = forward.into_iter().chain(backward).max() {
                best = best.min(worst);
            }
        }
        f[len] = 1 + best;
    }
    f[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn table_examples() {
        let stripe_min = GameSpec::new(Pattern::Stripe, Player::Min);
        assert_eq!(closed_form(&gen_path(7).unwrap(), &stripe_min), Prediction::Value(2));
        let star_max = GameSpec::new(Pattern::Star, Player::Max);
        assert_eq!(closed_form(&gen_complete_bipartite(3, 4).unwrap(), &star_max), Prediction::Value(2));
        for who in [Player::Max, Player::Min] {
            let spec = GameSpec::new(Pattern::Star, who);
            assert_eq!(closed_form(&gen_grid(2, 5).unwrap(), &spec), Prediction::Value(3));
        }
    }

    #[test]
    fn refuses_unknown_pairs() {
        let unrooted = GameSpec::new(Pattern::UnrootedP3, Player::Min);
        assert_eq!(closed_form(&gen_path(7).unwrap(), &unrooted), Prediction::Unresolved);
        let star_min = GameSpec::new(Pattern::Star, Player::Min);
        assert_eq!(closed_form(&gen_grid(4, 4).unwrap(), &star_min), Prediction::Unresolved);
        assert_eq!(closed_form(&gen_cycle(6).unwrap(), &star_min), Prediction::Unresolved);
        assert_eq!(closed_form(&gen_double_corona_complete(4).unwrap(), &GameSpec::new(Pattern::Star, Player::Max)), Prediction::Unresolved);
        assert_eq!(closed_form(&gen_rooks2(4).unwrap(), &star_min), Prediction::Unresolved);
        let stripe_max = GameSpec::new(Pattern::Stripe, Player::Max);
        assert_eq!(closed_form(&gen_mop_custom(5, &[(0, 2), (0, 3)]).unwrap(), &stripe_max), Prediction::Unresolved);
    }

    #[test]
    fn recurrence_small_values() {
        assert_eq!(recurrence_f(0), 0);
        assert_eq!(recurrence_f(2), 0);
        assert_eq!(recurrence_f(3), 1);
        assert_eq!(recurrence_f(7), 2);
    }
}
