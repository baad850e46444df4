# Affine geometric crystals
