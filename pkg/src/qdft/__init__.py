"""Eigenvectors of the finite Fourier transform built from q-Hermite polynomials."""
