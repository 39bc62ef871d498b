use crate::population::Individual;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub nfe: u64,
    pub best: f64,
}

/// Best-so-far objective value sampled once per generation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunTrace {
    points: Vec<TracePoint>,
}

impl RunTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a sample whose `nfe` exceeds the previous one. The recorded value is
    /// the running minimum, so the trace never increases.
    pub fn record(&mut self, nfe: u64, value: f64) {
        let best = match self.points.last() {
            Some(last) => {
                assert!(
                    nfe > last.nfe,
                    "trace nfe must increase ({} after {})",
                    nfe,
                    last.nfe
                );
                value.min(last.best)
            }
            None => value,
        };
        self.points.push(TracePoint { nfe, best });
    }

    pub fn points(&self) -> &[TracePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> Option<&TracePoint> {
        self.points.last()
    }

    /// Last recorded value at or before `nfe`.
    pub fn value_at(&self, nfe: u64) -> Option<f64> {
        let idx = self.points.partition_point(|p| p.nfe <= nfe);
        idx.checked_sub(1).map(|i| self.points[i].best)
    }
}

/// Outcome of one optimisation run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best: Individual,
    pub trace: RunTrace,
    pub evaluations: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_keeps_running_minimum() {
        let mut t = RunTrace::new();
        t.record(50, 10.0);
        t.record(100, 12.0);
        t.record(150, 4.0);
        let best: Vec<f64> = t.points().iter().map(|p| p.best).collect();
        assert_eq!(best, vec![10.0, 10.0, 4.0]);
    }

    #[test]
    fn value_at_carries_last_forward() {
        let mut t = RunTrace::new();
        t.record(50, 3.0);
        t.record(110, 2.0);
        assert_eq!(t.value_at(49), None);
        assert_eq!(t.value_at(50), Some(3.0));
        assert_eq!(t.value_at(109), Some(3.0));
        assert_eq!(t.value_at(500), Some(2.0));
    }

    #[test]
    #[should_panic]
    fn nfe_must_increase() {
        let mut t = RunTrace::new();
        t.record(50, 1.0);
        t.record(50, 0.5);
    }
}
