//! Fast non-dominated sorting, crowding-distance assignment, and the
//! crowded-comparison order used by selection and survival.

use crate::types::{Individual, Population};

/// Pareto dominance for minimization: `a` dominates `b` iff `a` is no worse
/// in every objective and strictly better in at least one.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "objective length mismatch");
    assert!(!a.is_empty(), "objective vectors must be non-empty");
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Partition of a population into ranked non-dominated fronts.
/// `fronts[0]` holds the indices of the non-dominated members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontPartition {
    pub fronts: Vec<Vec<usize>>,
}

/// Sort `members` into non-dominated fronts and set each individual's rank.
///
/// Runs the dominance-count bookkeeping of NSGA-II: O(M·N²) comparisons.
pub fn fast_nondominated_sort(members: &mut [Individual]) -> FrontPartition {
    let n = members.len();
    for m in members.iter() {
        assert!(!m.objectives.is_empty(), "unevaluated member");
    }

    // dominated_by[i]: indices dominated by i; count[i]: how many dominate i.
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut count = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if dominates(&members[i].objectives, &members[j].objectives) {
                dominated_by[i].push(j);
                count[j] += 1;
            } else if dominates(&members[j].objectives, &members[i].objectives) {
                dominated_by[j].push(i);
                count[i] += 1;
            }
        }
    }

    let mut fronts: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| count[i] == 0).collect();
    while !current.is_empty() {
        let rank = fronts.len();
        let mut next = Vec::new();
        for &i in &current {
            members[i].set_rank(rank);
            for &j in &dominated_by[i] {
                count[j] -= 1;
                if count[j] == 0 {
                    next.push(j);
                }
            }
        }
        fronts.push(std::mem::take(&mut current));
        next.sort_unstable();
        current = next;
    }
    FrontPartition { fronts }
}

/// Crowding distances for one front, given its members' objective vectors
/// in front order.
///
/// Per objective the front is stably sorted; the first and last member get
/// infinity, interior members accumulate the neighbor gap normalized by the
/// objective's range within the front. A degenerate range (max == min)
/// contributes nothing. A singleton front gets infinity.
pub fn crowding_distances(objectives: &[&[f64]]) -> Vec<f64> {
    let l = objectives.len();
    assert!(l >= 1, "front must be non-empty");
    let m_count = objectives[0].len();
    let mut dist = vec![0.0f64; l];
    if l <= 2 {
        return vec![f64::INFINITY; l];
    }
    let mut order: Vec<usize> = (0..l).collect();
    for m in 0..m_count {
        order.sort_by(|&a, &b| objectives[a][m].total_cmp(&objectives[b][m]));
        let first = order[0];
        let last = order[l - 1];
        dist[first] = f64::INFINITY;
        dist[last] = f64::INFINITY;
        let range = objectives[last][m] - objectives[first][m];
        if range <= 0.0 {
            continue;
        }
        for w in 1..l - 1 {
            let i = order[w];
            if dist[i].is_finite() {
                dist[i] += (objectives[order[w + 1]][m] - objectives[order[w - 1]][m]) / range;
            }
        }
        // Restore ascending index order so subsequent sorts stay stable
        // with ties broken by original position.
        order.sort_unstable();
    }
    dist
}

/// Assign crowding distances to the members of one front.
pub fn crowding_distance_assignment(members: &mut [Individual], front: &[usize]) {
    let objectives: Vec<&[f64]> = front.iter().map(|&i| members[i].objectives.as_slice()).collect();
    let dist = crowding_distances(&objectives);
    for (&i, d) in front.iter().zip(dist) {
        members[i].set_crowding(d);
    }
}

/// Crowded-comparison: lower rank wins; within a rank, larger crowding wins.
/// Strict: equal (rank, crowding) pairs compare false.
pub fn crowded_less(a: &Individual, b: &Individual) -> bool {
    a.rank() < b.rank() || (a.rank() == b.rank() && a.crowding() > b.crowding())
}

/// Rank the whole population and assign crowding within every front.
pub fn rank_and_crowd(pop: &mut Population) -> FrontPartition {
    let partition = fast_nondominated_sort(&mut pop.members);
    for front in &partition.fronts {
        crowding_distance_assignment(&mut pop.members, front);
    }
    partition
}
