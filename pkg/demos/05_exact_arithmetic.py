# The symbolic substrate: sparse multivariate polynomials with exact integer
# coefficients, two independent determinant algorithms, and exact division.

from sdres import MultiPoly, determinant

a, b, c, d = (MultiPoly.symbol(i) for i in range(4))

# build (a + 2b)(c - d) and recover the factors by exact division
product = (a + MultiPoly.const(2) * b) * (c - d)
print("product:", product)
print("divide back:", product.exact_div(c - d) == a + MultiPoly.const(2) * b)

# fraction-free elimination and memoized cofactor expansion must agree
matrix = [
    [a, b, MultiPoly.zero()],
    [c, d, a],
    [MultiPoly.zero(), b, c],
]
det_bareiss = determinant(matrix, method="bareiss")
det_laplace = determinant(matrix, method="laplace")
print("determinant:", det_bareiss)
print("methods agree:", det_bareiss == det_laplace)

# evaluation is exact over arbitrary precision integers
values = {0: 10**20, 1: -3, 2: 7, 3: 2**64}
print("evaluated:", det_bareiss.evaluate(values))
