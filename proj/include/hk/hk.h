#ifndef HK_H
#define HK_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(HK_BUILDING_LIBRARY)
#define HK_API __attribute__((visibility("default")))
#else
#define HK_API
#endif

/* Status codes. The CLI maps HK_OK to exit 0, HK_VERDICT_FAILED to 2 and
   every error to 1. */
typedef enum hk_status {
    HK_OK = 0,
    HK_INPUT_ERROR = 1,
    HK_VERDICT_FAILED = 2,
    HK_BUDGET_EXCEEDED = 3,
    HK_DOMAIN_ERROR = 4,
    HK_INTERNAL_ERROR = 5
} hk_status;

/* Opaque result of a call: a JSON document, its text rendering and, on
   error, a message and a JSON pointer into the request. */
typedef struct hk_result hk_result;

HK_API const char* hk_version(void);
HK_API const char* hk_status_name(hk_status status);

/* Runs one request, e.g.
   {"command": "hatted", "preset": "scarparo-2k", "coeffs": "Z", "max_degree": 4}.
   *out is always set (unless out is NULL) and must be released with
   hk_result_free. */
HK_API hk_status hk_run(const char* request_json, hk_result** out);

/* {"presets": [{"name": ..., "note": ...}, ...]} */
HK_API hk_status hk_presets(hk_result** out);

/* Text table for a report produced by hk_run. */
HK_API hk_status hk_render(const char* report_json, hk_result** out);

HK_API hk_status hk_result_status(const hk_result* r);
/* Report or error document; never NULL for a non-NULL handle. */
HK_API const char* hk_result_json(const hk_result* r);
/* Table rendering of the document. */
HK_API const char* hk_result_text(const hk_result* r);
/* Empty strings when the call succeeded. */
HK_API const char* hk_result_error_message(const hk_result* r);
HK_API const char* hk_result_error_pointer(const hk_result* r);
HK_API void hk_result_free(hk_result* r);

#ifdef __cplusplus
}
#endif

#endif
