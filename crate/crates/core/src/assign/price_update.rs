use crate::network::FlowNetwork;
use crate::residual::{reduced_cost, ResidualState};

const NONE: usize = usize::MAX;

/// Dense bucket array with O(1) move between buckets.
struct Buckets {
    slots: Vec<Vec<usize>>,
    bucket_of: Vec<usize>,
    pos: Vec<usize>,
}

impl Buckets {
    fn new(buckets: usize, nodes: usize) -> Self {
        Self { slots: vec![Vec::new(); buckets], bucket_of: vec![NONE; nodes], pos: vec![0; nodes] }
    }

    fn insert(&mut self, v: usize, b: usize) {
        self.remove(v);
        self.bucket_of[v] = b;
        self.pos[v] = self.slots[b].len();
        self.slots[b].push(v);
    }

    fn remove(&mut self, v: usize) {
        let b = self.bucket_of[v];
        if b == NONE {
            return;
        }
        let slot = &mut self.slots[b];
        let i = self.pos[v];
        slot.swap_remove(i);
        if let Some(&moved) = slot.get(i) {
            self.pos[moved] = i;
        }
        self.bucket_of[v] = NONE;
    }

    fn pop(&mut self, b: usize) -> Option<usize> {
        let v = self.slots[b].pop()?;
        self.bucket_of[v] = NONE;
        Some(v)
    }
}

/// Candidate bucket for a node reached from bucket `i` over an arc of
/// reduced cost `c`. Never below `i`.
pub fn candidate_bucket(i: usize, c: i64, eps: i64) -> usize {
    i + (c.div_euclid(eps) + 1).max(0) as usize
}

/// Bucketed backward search from the deficit nodes, stopping after the bucket
/// that holds the last active node. Scanned nodes drop by `eps * label`, the
/// rest by `eps * (last + 1)`.
///
/// Arcs flagged in `fixed` are ignored. Returns `false` without touching
/// prices when there is no deficit or no active node.
pub fn price_update(net: &FlowNetwork, state: &mut ResidualState, fixed: &[bool], eps: i64, max_cost: i64) -> bool {
    let nodes = net.node_count();
    let mut remaining = state.excess.iter().filter(|&&e| e > 0).count();
    if remaining == 0 || state.excess.iter().all(|&e| e >= 0) {
        return false;
    }

    let bucket_count = (max_cost / eps) as usize + 2;
    let mut buckets = Buckets::new(bucket_count, nodes);
    for v in (0..nodes).filter(|&v| state.excess[v] < 0) {
        buckets.insert(v, 0);
    }

    let mut label = vec![NONE; nodes];
    let mut last = 0;
    for i in 0..bucket_count {
        // The bucket holding the last active node is drained completely, so
        // every unscanned node has a candidate of at least `last + 1`.
        if remaining == 0 {
            break;
        }
        while let Some(y) = buckets.pop(i) {
            label[y] = i;
            last = i;
            if state.excess[y] > 0 {
                remaining -= 1;
            }
            // Residual arcs (x, y) are the mates of y's out-arcs.
            for &out in net.out_arcs(y) {
                let a = out ^ 1;
                let x = net.head(out);
                if fixed[a] || state.residual[a] <= 0 || label[x] != NONE {
                    continue;
                }
                let cand = candidate_bucket(i, reduced_cost(net, state, a), eps);
                if cand < bucket_count && cand < buckets.bucket_of[x] {
                    buckets.insert(x, cand);
                }
            }
        }
    }

    for (price, &l) in state.price.iter_mut().zip(&label) {
        let l = if l == NONE { last + 1 } else { l };
        *price -= eps * l as i64;
    }
    true
}
