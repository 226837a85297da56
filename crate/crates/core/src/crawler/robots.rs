/// Disallow prefixes that apply to one user agent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RobotsRules {
    pub disallow: Vec<String>,
}

impl RobotsRules {
    /// Parse a robots.txt body. The group naming `agent` wins over `*`.
    pub fn parse(body: &str, agent: &str) -> Self {
        let agent = agent.to_ascii_lowercase();
        let mut specific: Option<Vec<String>> = None;
        let mut wildcard: Option<Vec<String>> = None;
        let mut group_agents: Vec<String> = Vec::new();
        let mut group_rules: Vec<String> = Vec::new();
        let mut in_rules = false;

        let mut close_group = |agents: &mut Vec<String>, rules: &mut Vec<String>| {
            for a in agents.iter() {
                if a == "*" {
                    wildcard.get_or_insert_with(Vec::new).extend(rules.iter().cloned());
                } else if agent.starts_with(a.as_str()) {
                    specific.get_or_insert_with(Vec::new).extend(rules.iter().cloned());
                }
            }
            agents.clear();
            rules.clear();
        };

        for line in body.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            let Some((key, value)) = line.split_once(':') else {
                continue;
            };
            let key = key.trim().to_ascii_lowercase();
            let value = value.trim();
            match key.as_str() {
                "user-agent" => {
                    if in_rules {
                        close_group(&mut group_agents, &mut group_rules);
                        in_rules = false;
                    }
                    group_agents.push(value.to_ascii_lowercase());
                }
                "disallow" => {
                    in_rules = true;
                    if !value.is_empty() {
                        group_rules.push(value.to_string());
                    }
                }
                _ => in_rules = true,
            }
        }
        close_group(&mut group_agents, &mut group_rules);
        RobotsRules {
            disallow: specific.or(wildcard).unwrap_or_default(),
        }
    }

    /// `path` should include the query string when present.
    pub fn allows(&self, path: &str) -> bool {
        !self.disallow.iter().any(|p| path.starts_with(p.as_str()))
    }
}
