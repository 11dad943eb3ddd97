use std::time::Duration;

/// Outcome counters shared by every solver.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveReport {
    /// Flow value `|f|` or matching weight `w(M)`.
    pub objective: i64,
    pub pushes: u64,
    pub relabels: u64,
    /// Parallel rounds (sequential solvers count heuristic passes).
    pub rounds: u64,
    pub elapsed: Duration,
}

impl SolveReport {
    pub fn elapsed_ms(&self) -> f64 {
        self.elapsed.as_secs_f64() * 1e3
    }
}

/// Invariant counters collected at quiescent observation points.
///
/// Solvers only fill this in when handed one through their `*_audited`
/// entry points; every field counts violations except `observations`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Audit {
    pub observations: u64,
    pub pair_sum: u64,
    pub excess_sum: u64,
    pub excess_total: u64,
    pub distance: u64,
    pub epsilon: u64,
    pub price_increase: u64,
    pub foreign_price_write: u64,
    pub negative_excess: u64,
}

impl Audit {
    pub fn violations(&self) -> u64 {
        self.pair_sum
            + self.excess_sum
            + self.excess_total
            + self.distance
            + self.epsilon
            + self.price_increase
            + self.foreign_price_write
            + self.negative_excess
    }

    pub fn is_clean(&self) -> bool {
        self.violations() == 0
    }

    pub fn merge(&mut self, other: &Audit) {
        self.observations += other.observations;
        self.pair_sum += other.pair_sum;
        self.excess_sum += other.excess_sum;
        self.excess_total += other.excess_total;
        self.distance += other.distance;
        self.epsilon += other.epsilon;
        self.price_increase += other.price_increase;
        self.foreign_price_write += other.foreign_price_write;
        self.negative_excess += other.negative_excess;
    }
}
