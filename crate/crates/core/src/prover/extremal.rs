use std::ops::ControlFlow;

use crate::graph::Graph;
use crate::oracle::{longest_path, OrientedPath, PathBudget, PathEnumerator};

use super::ProverError;

/// Among all oriented longest paths, one maximising `d(v₁)`, then `d(v_p)`,
/// then lexicographically smallest.
///
/// Start vertices are tried in order of decreasing degree (ascending index
/// within a degree), so the first degree class that admits a longest path
/// fixes `d(v₁)` and later classes are skipped.
pub fn select_extremal_longest_path(
    g: &Graph,
    budget: PathBudget,
) -> Result<OrientedPath, ProverError> {
    if g.order() < 2 || !g.is_connected() {
        return Err(ProverError::Disconnected);
    }
    let p = longest_path(g).expect("n >= 2").order;
    let max_deg = g.max_degree();

    let mut starts: Vec<usize> = (0..g.order()).collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut en = PathEnumerator::new(g, p, budget);
    let mut best: Option<((usize, usize), Vec<usize>)> = None;
    for s in starts {
        if let Some(((d1, dp), _)) = best {
            if g.degree(s) < d1 || dp == max_deg {
                break;
            }
        }
        let stopped = en.run_from(s, &mut |vs| {
            let key = (g.degree(vs[0]), g.degree(vs[vs.len() - 1]));
            if best.as_ref().is_none_or(|(k, _)| key > *k) {
                best = Some((key, vs.to_vec()));
                if key.1 == max_deg {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        })?;
        if stopped {
            break;
        }
    }
    let (_, vertices) = best.expect("a connected graph has a longest path from some vertex");
    Ok(OrientedPath::new(g, vertices).expect("enumerated paths follow edges"))
}
