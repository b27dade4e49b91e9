use crate::error::{Error, Result};

/// Half-open time interval `(start, end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub start: f64,
    pub end: f64,
}

impl Interval {
    /// `start == end` is allowed and denotes an empty interval.
    pub fn new(start: f64, end: f64) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() || start > end {
            return Err(Error::InvalidParameter(format!("interval ({start}, {end}] is not well formed")));
        }
        Ok(Self { start, end })
    }

    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn contains(&self, t: f64) -> bool {
        t > self.start && t <= self.end
    }
}

/// One jump: arrival time `V`, subordinator jump `Z` and, once attached,
/// the GH jump `W`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpRecord {
    pub time: f64,
    pub z: f64,
    pub w: Option<f64>,
}

/// Jumps on an interval, sorted by arrival time.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpSequence {
    interval: Interval,
    records: Vec<JumpRecord>,
}

impl JumpSequence {
    pub fn empty(interval: Interval) -> Self {
        Self { interval, records: Vec::new() }
    }

    /// Validates that every record lies in the interval, has `Z > 0`, and
    /// that records are time-ordered.
    pub fn new(interval: Interval, records: Vec<JumpRecord>) -> Result<Self> {
        for (i, r) in records.iter().enumerate() {
            if !interval.contains(r.time) {
                return Err(Error::InvalidParameter(format!(
                    "jump {i} at time {} outside ({}, {}]",
                    r.time, interval.start, interval.end
                )));
            }
            if !(r.z > 0.0) || !r.z.is_finite() {
                return Err(Error::InvalidParameter(format!("jump {i} has Z = {}", r.z)));
            }
            if i > 0 && records[i - 1].time > r.time {
                return Err(Error::InvalidParameter(format!("jump {i} is out of time order")));
            }
        }
        Ok(Self { interval, records })
    }

    /// Sorts `records` by time before validating.
    pub fn from_unsorted(interval: Interval, mut records: Vec<JumpRecord>) -> Result<Self> {
        records.sort_by(|a, b| a.time.total_cmp(&b.time));
        Self::new(interval, records)
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn records(&self) -> &[JumpRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &JumpRecord> {
        self.records.iter()
    }

    /// Sum of the subordinator jumps.
    pub fn total_z(&self) -> f64 {
        self.records.iter().map(|r| r.z).sum()
    }

    /// Splits into the jumps on `(start, at]` and `(at, end]`.
    pub fn split_at(&self, at: f64) -> Result<(JumpSequence, JumpSequence)> {
        let left = Interval::new(self.interval.start, at)?;
        let right = Interval::new(at, self.interval.end)?;
        let k = self.records.partition_point(|r| r.time <= at);
        Ok((
            JumpSequence { interval: left, records: self.records[..k].to_vec() },
            JumpSequence { interval: right, records: self.records[k..].to_vec() },
        ))
    }

    pub(crate) fn records_mut(&mut self) -> &mut [JumpRecord] {
        &mut self.records
    }
}

/// Shot-noise path `Σ W_i 1{V_i ≤ t}`.
///
/// Records without an attached `W` contribute their `Z`, so on a
/// subordinator-only sequence this is the subordinator path.
pub fn shot_noise_path(seq: &JumpSequence, t: f64) -> f64 {
    seq.records.iter().take_while(|r| r.time <= t).map(|r| r.w.unwrap_or(r.z)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn path_of_empty_sequence_is_zero() {
        let seq = JumpSequence::empty(unit());
        for t in [-1.0, 0.0, 0.5, 2.0] {
            assert_eq!(shot_noise_path(&seq, t), 0.0);
        }
    }

    #[test]
    fn path_is_right_continuous() {
        let seq = JumpSequence::new(unit(), vec![JumpRecord { time: 0.5, z: 1.0, w: Some(2.0) }]).unwrap();
        assert_eq!(shot_noise_path(&seq, 0.49), 0.0);
        assert_eq!(shot_noise_path(&seq, 0.5), 2.0);
        assert_eq!(shot_noise_path(&seq, 1.0), 2.0);
    }

    #[test]
    fn invariants_enforced() {
        let r = |time, z| JumpRecord { time, z, w: None };
        assert!(JumpSequence::new(unit(), vec![r(0.0, 1.0)]).is_err());
        assert!(JumpSequence::new(unit(), vec![r(1.5, 1.0)]).is_err());
        assert!(JumpSequence::new(unit(), vec![r(0.5, 0.0)]).is_err());
        assert!(JumpSequence::new(unit(), vec![r(0.6, 1.0), r(0.5, 1.0)]).is_err());
        let s = JumpSequence::from_unsorted(unit(), vec![r(0.6, 1.0), r(0.5, 2.0)]).unwrap();
        assert_eq!(s.records()[0].time, 0.5);
        assert!(Interval::new(1.0, 0.0).is_err());
    }

    #[test]
    fn split_partitions_records() {
        let r = |time, z| JumpRecord { time, z, w: None };
        let s = JumpSequence::new(unit(), vec![r(0.2, 1.0), r(0.5, 2.0), r(0.7, 3.0)]).unwrap();
        let (a, b) = s.split_at(0.5).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(b.len(), 1);
        assert_eq!(a.interval().end, 0.5);
        assert_eq!(b.interval().start, 0.5);
    }
}
