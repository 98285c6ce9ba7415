#pragma once

#include <pteq/json_io.hpp>

#include <chrono>
#include <ostream>
#include <string>
#include <utility>

namespace pteq {

/*
 * Machine-readable outcome of one CLI invocation.
 *
 * status semantics: "ok" means the requested check or construction
 * succeeded; "violation" means a check ran to completion and found its
 * property false (the details carry an exact witness); "error" means the
 * request itself was unusable (bad file, wrong shape, unknown verb).
 * Exit codes follow the same tri-state: 0 / 1 / 2.
 *
 * The JSON serialization deliberately omits `elapsed`: identical argv and
 * seed must produce byte-identical --json output, and a wall-clock field
 * would break that. Humans get the timing on stderr-free plain output.
 */
struct RunReport {
    enum class Status { ok, violation, error };

    std::string verb;
    Status status = Status::ok;
    Json details = Json::object();
    std::chrono::microseconds elapsed{0};

    int exit_code() const {
        switch (status) {
            case Status::ok: return 0;
            case Status::violation: return 1;
            case Status::error: return 2;
        }
        return 2;
    }

    static const char* status_name(Status s) {
        switch (s) {
            case Status::ok: return "ok";
            case Status::violation: return "violation";
            case Status::error: return "error";
        }
        return "error";
    }

    Json to_json() const {
        return Json{{"verb", verb}, {"status", status_name(status)}, {"details", details}};
    }

    void print_human(std::ostream& os) const {
        os << verb << ": " << status_name(status) << "\n";
        if (!details.empty()) os << details.dump(2) << "\n";
        os << "elapsed: " << elapsed.count() << " us\n";
    }
};

} // namespace pteq
