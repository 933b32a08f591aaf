//! What the theory predicts for each property, per space.

use gaugeflow_core::{Property, Space, Status};

/// Expected checker status for `property` in `space`.
///
/// On the full space all five properties hold. On the single-cycle contrast
/// space the action is minimal and equicontinuous, so those two checkers are
/// expected to come back falsified.
pub fn expected_status(property: Property, space: Space) -> Status {
    match (space, property) {
        (Space::SingleCycle, Property::NonMinimality | Property::NonEquicontinuity) => {
            Status::Falsified
        }
        _ => Status::Verified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table() {
        for p in Property::CORE {
            assert_eq!(expected_status(p, Space::Full), Status::Verified);
        }
        let falsified: Vec<_> = Property::CORE
            .into_iter()
            .filter(|p| expected_status(*p, Space::SingleCycle) == Status::Falsified)
            .collect();
        assert_eq!(
            falsified,
            [Property::NonMinimality, Property::NonEquicontinuity]
        );
    }
}
