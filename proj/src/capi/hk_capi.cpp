#include "hk/hk.h"

#include <new>
#include <string>

#include "hk/cli.hpp"

using hk::cli::json;

struct hk_result {
    hk_status status = HK_OK;
    std::string json_text;
    std::string table;
    std::string message;
    std::string pointer;
};

namespace {

hk_status finish(hk_result* r, hk_result** out) {
    const hk_status s = r->status;
    if (out != nullptr)
        *out = r;
    else
        delete r;
    return s;
}

hk_status fail(hk_result* r, hk_status s, const char* kind, const std::string& msg, const std::string& ptr,
               hk_result** out) {
    r->status = s;
    r->message = msg;
    r->pointer = ptr;
    json doc{{"schema_version", hk::cli::kSchemaVersion},
             {"error", {{"kind", kind}, {"message", msg}, {"pointer", ptr}}}};
    r->json_text = hk::cli::dump(doc);
    r->table = hk::cli::render_table(doc);
    return finish(r, out);
}

template <class F>
hk_status guarded(hk_result** out, F&& body) {
    auto* r = new (std::nothrow) hk_result;
    if (r == nullptr) {
        if (out != nullptr) *out = nullptr;
        return HK_INTERNAL_ERROR;
    }
    try {
        body(*r);
        return finish(r, out);
    } catch (const hk::InputError& e) {
        return fail(r, HK_INPUT_ERROR, "input", e.what(), e.pointer(), out);
    } catch (const json::exception& e) {
        return fail(r, HK_INPUT_ERROR, "input", e.what(), "", out);
    } catch (const hk::BudgetError& e) {
        return fail(r, HK_BUDGET_EXCEEDED, "budget", e.what(), "", out);
    } catch (const hk::DomainError& e) {
        return fail(r, HK_DOMAIN_ERROR, "domain", e.what(), "", out);
    } catch (const std::exception& e) {
        return fail(r, HK_INTERNAL_ERROR, "internal", e.what(), "", out);
    }
}

json parse(const char* text, const char* what) {
    if (text == nullptr) throw hk::InputError(std::string(what) + " is NULL");
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw hk::InputError(std::string(what) + " is not valid JSON: " + e.what());
    }
}

}  // namespace

extern "C" {

const char* hk_version(void) { return "1.0.0"; }

const char* hk_status_name(hk_status status) {
    switch (status) {
        case HK_OK: return "ok";
        case HK_INPUT_ERROR: return "input_error";
        case HK_VERDICT_FAILED: return "verdict_failed";
        case HK_BUDGET_EXCEEDED: return "budget_exceeded";
        case HK_DOMAIN_ERROR: return "domain_error";
        case HK_INTERNAL_ERROR: return "internal_error";
    }
    return "unknown";
}

hk_status hk_run(const char* request_json, hk_result** out) {
    return guarded(out, [&](hk_result& r) {
        auto spec = hk::cli::runspec_from_json(parse(request_json, "request"));
        auto res = hk::cli::run(spec);
        r.status = res.exit_code == hk::cli::kExitVerdictFailed ? HK_VERDICT_FAILED : HK_OK;
        r.json_text = hk::cli::dump(res.report);
        r.table = hk::cli::render_table(res.report);
    });
}

hk_status hk_presets(hk_result** out) {
    return guarded(out, [&](hk_result& r) {
        json list = json::array();
        for (const auto& p : hk::cli::preset_registry()) list.push_back({{"name", p.name}, {"note", p.note}});
        json doc{{"schema_version", hk::cli::kSchemaVersion}, {"presets", list}};
        r.json_text = hk::cli::dump(doc);
        r.table = hk::cli::render_table(doc);
    });
}

hk_status hk_render(const char* report_json, hk_result** out) {
    return guarded(out, [&](hk_result& r) {
        json doc = parse(report_json, "report");
        r.table = hk::cli::render_table(doc);
        r.json_text = hk::cli::dump(doc);
    });
}

hk_status hk_result_status(const hk_result* r) { return r == nullptr ? HK_INTERNAL_ERROR : r->status; }
const char* hk_result_json(const hk_result* r) { return r == nullptr ? "" : r->json_text.c_str(); }
const char* hk_result_text(const hk_result* r) { return r == nullptr ? "" : r->table.c_str(); }
const char* hk_result_error_message(const hk_result* r) { return r == nullptr ? "" : r->message.c_str(); }
const char* hk_result_error_pointer(const hk_result* r) { return r == nullptr ? "" : r->pointer.c_str(); }
void hk_result_free(hk_result* r) { delete r; }

}  // extern "C"
