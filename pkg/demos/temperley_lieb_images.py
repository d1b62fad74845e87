"""Print a few Temperley-Lieb images of Q_3 and P_4 and check they are independent."""

from fctool.temperley_lieb import check_faithful, tl_morphism_image

for word in (("t",), ("s2", "t"), ("t", "s2", "t")):
    print("Q_3", " ".join(word), "->", tl_morphism_image("Qn", 3, word))
print("P_4 sb3 ->", tl_morphism_image("Pn", 4, ("sb3",)))

for map_id, n in (("Qn", 3), ("Pn", 4)):
    count, rank = check_faithful(map_id, n, 6)
    print(f"{map_id} n={n}: {count} fc images with l <= 6, rank {rank}")
