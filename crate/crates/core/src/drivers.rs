//! Whole-configuration procedures selectable by name.

use crate::error::Result;
use crate::model::Configuration;
use crate::resolution::{principalize, reduce_trace, weak_resolve, ResolutionTrace};

pub trait Driver: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, cfg: &Configuration) -> Result<ResolutionTrace>;
}

struct FnDriver {
    name: &'static str,
    description: &'static str,
    body: fn(&Configuration) -> Result<ResolutionTrace>,
}

impl Driver for FnDriver {
    fn name(&self) -> &'static str {
        self.name
    }
    fn description(&self) -> &'static str {
        self.description
    }
    fn run(&self, cfg: &Configuration) -> Result<ResolutionTrace> {
        (self.body)(cfg)
    }
}

pub struct DriverRegistry {
    drivers: Vec<Box<dyn Driver>>,
}

impl DriverRegistry {
    pub fn empty() -> Self {
        DriverRegistry {
            drivers: Vec::new(),
        }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(FnDriver {
            name: "reduce",
            description: "order reduction until the support is empty",
            body: reduce_trace,
        }));
        r.register(Box::new(FnDriver {
            name: "principalize",
            description: "blow up until the total transform is locally monomial",
            body: principalize,
        }));
        r.register(Box::new(FnDriver {
            name: "resolve",
            description: "principalize and locate where the subscheme separates",
            body: weak_resolve,
        }));
        r
    }

    pub fn register(&mut self, driver: Box<dyn Driver>) {
        self.drivers.push(driver);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Driver> {
        self.drivers.iter().find(|d| d.name() == name).map(|d| &**d)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.drivers.iter().map(|d| d.name()).collect()
    }
}
