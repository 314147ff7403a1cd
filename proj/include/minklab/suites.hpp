#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace minklab {

struct SuiteCheck
{
    std::string name;
    bool passed;
    double residual; // always reported, also on pass
    double tolerance;
    std::string note;
};

/**
key=value settings for tolerances, steps and sample counts. Every key a suite
reads is remembered together with the value actually used, so the report can
echo the effective configuration.
*/
class SuiteConfig
{
public:
    static SuiteConfig parse(const std::string& text); // '#' starts a comment
    static SuiteConfig load(const std::string& path);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    double number(const std::string& key, double fallback) const;
    int integer(const std::string& key, int fallback) const;
    std::pair<int, int> extent(const std::string& key, std::pair<int, int> fallback) const; // "WxH"

    std::map<std::string, std::string> echo() const;
    void merge_used(const SuiteConfig& other) const;

private:
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, std::string> used_;
};

std::pair<int, int> parse_extent(const std::string& s); // "41x41" -> (41, 41)

struct SuiteReport
{
    static constexpr int schema_version = 1;

    std::string suite;
    unsigned long long seed = 0;
    std::map<std::string, std::string> config;
    std::vector<SuiteCheck> checks;

    bool passed() const;
    std::string to_json() const;
    std::string to_csv() const;
};

const std::vector<std::string>& suite_names(); // modules in canonical order, then "all"
bool known_suite(const std::string& name);

// Throws PreconditionError for an unknown suite name.
SuiteReport run_suite(const std::string& name, unsigned long long seed, const SuiteConfig& config);

} // namespace minklab
