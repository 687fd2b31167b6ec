s1 = 'single'
s2 = "double with \"escapes\" inside"
s3 = '''triple
quoted # not a comment
spanning lines'''
s4 = """another
triple"""
broken = "this string never ends
after = s1 + s2  # comment after code
raw = r'\d+\s*>=\s*\d+'
ops = a >= b and c <= d or e != f
arrow = lambda x: x  # -> not an operator here
def annotated(x: int) -> int:
    return x ** 2 // 3
