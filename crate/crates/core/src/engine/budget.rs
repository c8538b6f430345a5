use super::EngineError;

/// Hard cap on forward-model advance calls within one decision.
///
/// Fields are private: the only way to move `used` is a successful
/// [`BudgetMeter::consume`], so `used <= cap` holds by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetMeter {
    cap: u64,
    used: u64,
}

impl BudgetMeter {
    pub fn new(cap: u64) -> Self {
        Self { cap, used: 0 }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.cap - self.used
    }

    pub fn is_exhausted(&self) -> bool {
        self.used == self.cap
    }

    /// Charges one advance call.
    pub fn consume(&mut self) -> Result<(), EngineError> {
        if self.used == self.cap {
            return Err(EngineError::BudgetExhausted { cap: self.cap });
        }
        self.used += 1;
        Ok(())
    }

    pub fn reset(&mut self) {
        self.used = 0;
    }
}
