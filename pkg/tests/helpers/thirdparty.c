/* Minimal external "implementation under test" for validator tests.
 *
 * Implements the same extractors as the library (convention
 * T[i,j] = y[(i-j) mod q]) with optional deliberate bugs, so the heavy
 * validator acceptance tests can spawn one real process per case
 * cheaply.  Cross-checked against the library before use.
 *
 * usage: thirdparty TYPE N M MUTATION SEED INPUT
 *   TYPE      toeplitz | modified-toeplitz
 *   MUTATION  none | drop-last-input-bit | reverse-seed | flip-entry:I,J
 *   SEED, INPUT  '0'/'1' strings
 */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int parse_bits(const char *s, int expect, int *out) {
    int i;
    for (i = 0; s[i]; i++) {
        if (s[i] != '0' && s[i] != '1') return -1;
        if (i < expect) out[i] = s[i] - '0';
    }
    return i == expect ? 0 : -1;
}

int main(int argc, char **argv) {
    if (argc != 7) {
        fprintf(stderr, "usage: %s TYPE N M MUTATION SEED INPUT\n", argv[0]);
        return 2;
    }
    const char *type = argv[1];
    int n = atoi(argv[2]);
    int m = atoi(argv[3]);
    const char *mutation = argv[4];
    int modified = strcmp(type, "modified-toeplitz") == 0;
    if (!modified && strcmp(type, "toeplitz") != 0) return 2;
    if (n < 1 || m < 1 || n > 4096 || m > 4096) return 2;

    int seed_len = modified ? n - 1 : n + m - 1;
    int *y = malloc(sizeof(int) * seed_len);
    int *x = malloc(sizeof(int) * n);
    if (parse_bits(argv[5], seed_len, y) || parse_bits(argv[6], n, x)) {
        fprintf(stderr, "bad seed/input lengths\n");
        return 1;
    }

    int flip_i = -1, flip_j = -1;
    if (strcmp(mutation, "drop-last-input-bit") == 0) {
        x[n - 1] = 0;
    } else if (strcmp(mutation, "reverse-seed") == 0) {
        for (int i = 0; i < seed_len / 2; i++) {
            int t = y[i];
            y[i] = y[seed_len - 1 - i];
            y[seed_len - 1 - i] = t;
        }
    } else if (sscanf(mutation, "flip-entry:%d,%d", &flip_i, &flip_j) == 2) {
        /* handled after the product */
    } else if (strcmp(mutation, "none") != 0) {
        fprintf(stderr, "unknown mutation %s\n", mutation);
        return 2;
    }

    int q = seed_len;
    int body = modified ? n - m : n;
    for (int i = 0; i < m; i++) {
        int acc = 0;
        for (int j = 0; j < body; j++)
            if (x[j]) acc ^= y[((i - j) % q + q) % q];
        if (modified) acc ^= x[body + i];
        if (i == flip_i && flip_j >= 0 && flip_j < n) acc ^= x[flip_j];
        putchar('0' + acc);
    }
    putchar('\n');
    free(y);
    free(x);
    return 0;
}
