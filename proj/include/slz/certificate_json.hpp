#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "slz/presentation.hpp"

namespace slz {

nlohmann::json step_to_json(const Step& s);
Step step_from_json(const nlohmann::json& j);
nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

// Streams a certificate as JSON without holding all steps in memory.
class CertificateWriter {
public:
    CertificateWriter(std::ostream& os, int n, const Word& initial, const CostModel& cm);
    void add(const Step& s);
    void finish(uint64_t total_cost);

private:
    std::ostream& os_;
    bool first_ = true;
};

}  // namespace slz
