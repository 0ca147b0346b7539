#include <atomic>
#include <thread>

#include "implab/parallel.hpp"
#include "implab/types.hpp"

namespace implab {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
    const unsigned n = g_threads.load();
    if (n > 0) return n;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidMap: return "InvalidMap";
        case ErrorCode::InvalidRegion: return "InvalidRegion";
        case ErrorCode::InvalidGrid: return "InvalidGrid";
        case ErrorCode::InvalidSequence: return "InvalidSequence";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::DegenerateDirection: return "DegenerateDirection";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::OutsideInvertibleRegion: return "OutsideInvertibleRegion";
        case ErrorCode::PoleAtGate: return "PoleAtGate";
        case ErrorCode::OutsideStrip: return "OutsideStrip";
        case ErrorCode::EpsOutsideSector: return "EpsOutsideSector";
        case ErrorCode::SectorViolation: return "SectorViolation";
        case ErrorCode::DomainViolation: return "DomainViolation";
        case ErrorCode::NotInRegion: return "NotInRegion";
        case ErrorCode::NotInBasin: return "NotInBasin";
        case ErrorCode::NotInRepellingBasin: return "NotInRepellingBasin";
        case ErrorCode::ImageNotInRepellingBasin: return "ImageNotInRepellingBasin";
        case ErrorCode::OrbitLeftDomain: return "OrbitLeftDomain";
        case ErrorCode::OrbitEscaped: return "OrbitEscaped";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::RegimeViolation: return "RegimeViolation";
        case ErrorCode::NotRegular: return "NotRegular";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::InconclusiveScene: return "InconclusiveScene";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace implab
