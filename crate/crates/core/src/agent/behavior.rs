//! Privacy behaviors (scope, division, dedication) and the user-type mapping.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How many useful arguments an agent plays per turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    All,
    Shortest,
    Longest,
    Random,
}

/// How finely the knowledge base is cut into dedication levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Division {
    None,
    HalfArgs,
    AllArgs,
    AllContent,
}

impl Scope {
    pub const ALL: [Scope; 4] = [Scope::All, Scope::Shortest, Scope::Longest, Scope::Random];

    pub fn as_str(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Shortest => "shortest",
            Scope::Longest => "longest",
            Scope::Random => "random",
        }
    }
}

impl Division {
    pub const ALL: [Division; 4] = [
        Division::None,
        Division::HalfArgs,
        Division::AllArgs,
        Division::AllContent,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Division::None => "none",
            Division::HalfArgs => "half_args",
            Division::AllArgs => "all_args",
            Division::AllContent => "all_content",
        }
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scope::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown scope `{s}`")))
    }
}

impl FromStr for Division {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Division::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown division `{s}`")))
    }
}

/// Willingness threshold θ in percent: the chance of dropping one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Dedication(u8);

impl Dedication {
    pub const GRID: [u8; 5] = [0, 25, 50, 75, 100];

    pub fn new(percent: u8) -> Result<Self> {
        if percent > 100 {
            return Err(Error::invalid(format!("theta {percent} is above 100")));
        }
        Ok(Dedication(percent))
    }

    pub fn percent(self) -> u8 {
        self.0
    }
}

impl TryFrom<u8> for Dedication {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        Dedication::new(v)
    }
}

impl From<Dedication> for u8 {
    fn from(d: Dedication) -> u8 {
        d.0
    }
}

/// One of the privacy types an agent can adopt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrivacyBehavior {
    pub scope: Scope,
    pub division: Division,
    pub theta: Dedication,
}

impl PrivacyBehavior {
    pub const fn new(scope: Scope, division: Division, theta: u8) -> Self {
        assert!(theta <= 100);
        PrivacyBehavior {
            scope,
            division,
            theta: Dedication(theta),
        }
    }

    /// The unpersonalized baseline.
    pub const INDIFFERENT: PrivacyBehavior = PrivacyBehavior::new(Scope::All, Division::None, 100);

    /// The 80 behaviors, scope-major, then division, then θ ascending.
    pub fn grid() -> Vec<PrivacyBehavior> {
        let mut out = Vec::with_capacity(80);
        for scope in Scope::ALL {
            for division in Division::ALL {
                for theta in Dedication::GRID {
                    out.push(PrivacyBehavior::new(scope, division, theta));
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PrivacyBehavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}",
            self.scope.as_str(),
            self.division.as_str(),
            self.theta.0
        )
    }
}

/// Parses `scope:division:theta`, e.g. `shortest:all_content:25`.
impl FromStr for PrivacyBehavior {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [scope, division, theta] = parts[..] else {
            return Err(Error::invalid(format!(
                "behavior `{s}` is not of the form scope:division:theta"
            )));
        };
        let theta: u8 = theta
            .parse()
            .map_err(|_| Error::invalid(format!("theta `{theta}` is not an integer")))?;
        Ok(PrivacyBehavior {
            scope: scope.parse()?,
            division: division.parse()?,
            theta: Dedication::new(theta)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degree {
    Low,
    Medium,
    High,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UserType {
    Fundamentalist,
    LazyExpert,
    Technician,
    Amateur,
    MarginallyConcerned,
}

impl UserType {
    /// Order used for reporting: Table order of the personalized agents.
    pub const ALL: [UserType; 5] = [
        UserType::Fundamentalist,
        UserType::Technician,
        UserType::Amateur,
        UserType::LazyExpert,
        UserType::MarginallyConcerned,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            UserType::Fundamentalist => "fundamentalist",
            UserType::LazyExpert => "lazy_expert",
            UserType::Technician => "technician",
            UserType::Amateur => "amateur",
            UserType::MarginallyConcerned => "marginally_concerned",
        }
    }

    /// Knowledge and motivation that characterize the type.
    pub fn degrees(self) -> (Degree, Degree) {
        match self {
            UserType::Fundamentalist => (Degree::High, Degree::High),
            UserType::LazyExpert => (Degree::High, Degree::Low),
            UserType::Technician => (Degree::Medium, Degree::High),
            UserType::Amateur => (Degree::Medium, Degree::Medium),
            UserType::MarginallyConcerned => (Degree::Low, Degree::Low),
        }
    }
}

impl FromStr for UserType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        UserType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown user type `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UserProfile {
    privacy_type: UserType,
    knowledge: Degree,
    motivation: Degree,
}

impl UserProfile {
    pub fn new(privacy_type: UserType, knowledge: Degree, motivation: Degree) -> Result<Self> {
        if privacy_type.degrees() != (knowledge, motivation) {
            return Err(Error::invalid(format!(
                "{} users have knowledge/motivation {:?}, not ({knowledge:?}, {motivation:?})",
                privacy_type.as_str(),
                privacy_type.degrees()
            )));
        }
        Ok(UserProfile {
            privacy_type,
            knowledge,
            motivation,
        })
    }

    pub fn of_type(privacy_type: UserType) -> Self {
        let (knowledge, motivation) = privacy_type.degrees();
        UserProfile {
            privacy_type,
            knowledge,
            motivation,
        }
    }

    pub fn privacy_type(&self) -> UserType {
        self.privacy_type
    }

    pub fn knowledge(&self) -> Degree {
        self.knowledge
    }

    pub fn motivation(&self) -> Degree {
        self.motivation
    }
}

/// Maps a user to its personalized agent behavior.
pub fn personalize(profile: &UserProfile) -> PrivacyBehavior {
    use Division::*;
    let (division, theta) = match profile.privacy_type {
        UserType::Fundamentalist => (AllContent, 25),
        UserType::Technician => (AllArgs, 25),
        UserType::Amateur => (AllArgs, 50),
        UserType::LazyExpert => (AllContent, 75),
        UserType::MarginallyConcerned => (HalfArgs, 75),
    };
    PrivacyBehavior::new(Scope::Shortest, division, theta)
}
