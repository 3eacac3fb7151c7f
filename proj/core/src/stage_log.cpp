#include "pkp/stage_log.hpp"

#include <cstdio>
#include <ostream>

namespace pkp {

void StageLog::record(std::string stage, double predicted_log2, std::size_t measured, double elapsed_ms) {
    records_.push_back(StageRecord{std::move(stage), predicted_log2, measured, elapsed_ms});
}

const StageRecord* StageLog::find(const std::string& stage) const {
    for (const auto& r : records_) {
        if (r.stage == stage) return &r;
    }
    return nullptr;
}

std::string format_stage(const StageRecord& record) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "stage=%s predicted_log2=%.4f measured=%zu elapsed_ms=%.3f", record.stage.c_str(),
                  record.predicted_log2, record.measured, record.elapsed_ms);
    return buf;
}

void StageLog::write(std::ostream& out) const {
    for (const auto& r : records_) out << format_stage(r) << '\n';
}

}  // namespace pkp
