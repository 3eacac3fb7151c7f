#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace pkp {

/// One solver stage: predicted vs. measured list size and wall time.
struct StageRecord {
    std::string stage;
    double predicted_log2;
    std::size_t measured;
    double elapsed_ms;
};

class StageLog {
public:
    void record(std::string stage, double predicted_log2, std::size_t measured, double elapsed_ms);

    const std::vector<StageRecord>& records() const noexcept { return records_; }
    const StageRecord* find(const std::string& stage) const;

    /// "stage=<name> predicted_log2=<x> measured=<k> elapsed_ms=<t>" per line.
    void write(std::ostream& out) const;

private:
    std::vector<StageRecord> records_;
};

std::string format_stage(const StageRecord& record);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace pkp
