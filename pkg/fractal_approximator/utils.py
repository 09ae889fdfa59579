def merge_dicts(x, y):
    """Recursively merges two dicts.

    When keys exist in both the value of 'y' is used. Keys of 'y' whose value is None do not override 'x', so
    unset command line flags leave the values of a run definition untouched.

    Args:
        x (dict): First dict
        y (dict): Second dict

    Returns:
        dict: The merged dict
    """
    if x is None and y is None:
        return {}
    if x is None:
        return y
    if y is None:
        return x

    merged = dict(x)
    for key, value in y.items():
        if value is None and key in x:
            continue
        if type(value) is dict and type(x.get(key)) is dict:
            merged[key] = merge_dicts(x[key], value)
        else:
            merged[key] = value
    return merged


def load_yaml(string):
    """Parses a YAML string and produce the corresponding Python object.

    Args:
        string (str): The input string to be parsed

    Returns:
        dict: The parsed YAML

    Raises:
        yaml.YAMLError: If the YAML string is malformed
    """

    import ruamel.yaml as yaml
    from fractal_approximator.log import Log

    try:
        Log.debug("Parsing YAML...")
        yml = yaml.YAML(typ='safe')
        return yml.load(string) or {}
    except yaml.YAMLError as e:
        raise yaml.YAMLError("YAML parsing error: {0}".format(getattr(e, 'problem', None) or str(e)))


def format_float(value, digits=17):
    """Formats a float with the given number of significant digits.

    17 digits round-trip any double exactly, 12 are used for human-facing output.

    Args:
        value (float): The value to format
        digits (int): Number of significant digits

    Returns:
        str: The formatted value
    """
    return '{0:.{1}g}'.format(float(value), digits)


def round_significant(value, digits=12):
    """Rounds a float to the given number of significant digits.

    Args:
        value (float): The value to round
        digits (int): Number of significant digits

    Returns:
        float: The rounded value
    """
    return float(format_float(value, digits))


def to_nice_json(value, indent=4):
    """Converts the value to human readable JSON with sorted keys."""
    import json
    return json.dumps(value, indent=indent, sort_keys=True, separators=(',', ': ')) + '\n'
