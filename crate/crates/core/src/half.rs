use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An exact multiple of one half, stored as its doubled integer value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Half(i64);

impl Half {
    pub const ZERO: Half = Half(0);

    pub fn from_doubled(doubled: i64) -> Self {
        Half(doubled)
    }

    pub fn from_int(value: i64) -> Self {
        Half(2 * value)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn abs(self) -> Self {
        Half(self.0.abs())
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

/// Prints `-7` or `-11/2`.
impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl std::str::FromStr for Half {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.strip_suffix("/2") {
            Some(num) => num.parse::<i64>().map(Half).map_err(|e| e.to_string()),
            None => s.parse::<i64>().map(Half::from_int).map_err(|e| e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_halves() {
        assert_eq!(Half::from_doubled(-14).to_string(), "-7");
        assert_eq!(Half::from_doubled(-11).to_string(), "-11/2");
        assert_eq!(Half::from_doubled(1).to_string(), "1/2");
        assert_eq!(Half::ZERO.to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for d in -9..9 {
            let h = Half::from_doubled(d);
            assert_eq!(h.to_string().parse::<Half>().unwrap(), h);
        }
    }
}
