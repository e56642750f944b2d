#ifndef SPECTRA_H
#define SPECTRA_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SPECTRA_STATUS_OK = 0,
  SPECTRA_STATUS_NULL_POINTER = 1,
  SPECTRA_STATUS_INVALID_UTF8 = 2,
  SPECTRA_STATUS_PARSE = 3,
  SPECTRA_STATUS_INVALID_COMPLEX = 4,
  SPECTRA_STATUS_INVALID_ARGUMENT = 5,
  SPECTRA_STATUS_COMPUTATION = 6,
  SPECTRA_STATUS_PANIC = 7,
} SpectraStatus;

/**
 * Opaque handle to a validated filtered complex.
 */
typedef struct SpectraComplex SpectraComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread. Owned by the library,
 * valid until the next failing call on the same thread.
 */
const char *spectra_last_error(void);

/**
 * Parses and validates a complex from its JSON text.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a writable pointer.
 */
SpectraStatus spectra_complex_from_json(const char *json, SpectraComplex **out);

/**
 * # Safety
 * `c` must come from `spectra_complex_from_json` and not be used again.
 */
void spectra_complex_free(SpectraComplex *c);

/**
 * Number of generators.
 *
 * # Safety
 * `c` must be a live handle.
 */
SpectraStatus spectra_complex_len(const SpectraComplex *c, uintptr_t *out);

/**
 * Canonical JSON of the complex.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
SpectraStatus spectra_complex_to_json(const SpectraComplex *c, char **out);

/**
 * Spectral invariant of a class given as `id=coef,...` over `ring`
 * (`Z`, `Q` or `Z/m`). `degree < 0` means "infer from the chain".
 * Writes the value as text: a rational, `-inf` or `inf`.
 *
 * # Safety
 * `c` must be a live handle, strings nul-terminated, `out` writable.
 */
SpectraStatus spectra_spectral_invariant(const SpectraComplex *c,
                                         const char *ring,
                                         int64_t degree,
                                         const char *class_,
                                         char **out);

/**
 * Torsion depth of the whole complex, as a rational in text form.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
SpectraStatus spectra_torsion_depth(const SpectraComplex *c, char **out);

/**
 * Runs the command line tool in-process. `argv` excludes the program
 * name. Standard output and error come back as strings.
 *
 * # Safety
 * `argv` must hold `argc` nul-terminated strings; the out pointers must be
 * writable.
 */
SpectraStatus spectra_cli_run(int argc,
                              const char *const *argv,
                              int *exit_code,
                              char **stdout,
                              char **stderr);

/**
 * # Safety
 * `s` must come from this library and not be used again.
 */
void spectra_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECTRA_H */
