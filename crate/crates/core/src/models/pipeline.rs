use crate::error::{Error, Result};
use crate::qcore::{born_probabilities, evolve, Observable, Operator, QuantumState};
use crate::tradeoff::{ozawa_quantities, OzawaReport, ScenarioDistributions};

/// System coupled to a meter by a unitary, with the first observable read out
/// on the meter and the second measured on the system afterwards.
#[derive(Debug, Clone)]
pub struct IndirectMeasurement {
    pub system: QuantumState,
    pub meter: QuantumState,
    /// Acts on system (x) meter.
    pub coupling: Operator,
    pub a: Observable,
    pub b: Observable,
    /// Meter readout; usually the same matrix as `a`.
    pub meter_observable: Observable,
}

impl IndirectMeasurement {
    pub fn distributions(&self) -> Result<ScenarioDistributions> {
        let n = self.a.outcomes();
        for got in [self.b.outcomes(), self.meter_observable.outcomes()] {
            if got != n {
                return Err(Error::LengthMismatch { left: n, right: got });
            }
        }
        let id_s = Operator::identity(self.system.dim());
        let id_m = Operator::identity(self.meter.dim());

        let p_a = born_probabilities(&self.system, self.a.projectors())?;
        let p_b = born_probabilities(&self.system, self.b.projectors())?;
        let after = evolve(&self.system.tensor(&self.meter), &self.coupling)?;
        let readout: Vec<Operator> = self.meter_observable.projectors().iter().map(|m| id_s.kron(m)).collect();
        let later_b: Vec<Operator> = self.b.projectors().iter().map(|p| p.kron(&id_m)).collect();
        let p_c = born_probabilities(&after, &readout)?;
        let p_d = born_probabilities(&after, &later_b)?;
        ScenarioDistributions::new(p_a, p_b, p_c, p_d)
    }

    pub fn ozawa(&self) -> Result<OzawaReport> {
        ozawa_quantities(&self.system, &self.meter, &self.a, &self.b, &self.coupling, &self.meter_observable)
    }
}
