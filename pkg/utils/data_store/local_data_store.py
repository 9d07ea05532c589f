import json
import os


class LocalDataStore(object):
    """Folder-backed store for run outputs and cached artifacts."""

    def __init__(self, root):
        self.root = root

    def _path(self, folder_name, filename):
        return os.path.join(self.root, folder_name, filename)

    def create_folder(self, folder_name):
        path = os.path.join(self.root, folder_name)
        os.makedirs(path, exist_ok=True)
        return path

    def exists(self, folder_name, filename):
        return os.path.isfile(self._path(folder_name, filename))

    def write_json_file(self, folder_name, filename, contents):
        """Write JSON file into the folder"""
        self.create_folder(folder_name)
        path = self._path(folder_name, filename)
        with open(path, "w", encoding="utf-8") as fp:
            json.dump(contents, fp, indent=2, sort_keys=False)
        return path

    def write_dataframe(self, folder_name, filename, df):
        """Write a DataFrame as CSV without the index, floats with 17 significant digits"""
        self.create_folder(folder_name)
        path = self._path(folder_name, filename)
        df.to_csv(path, index=False, float_format="%.17g")
        return path

    def write_bytes(self, folder_name, filename, payload):
        self.create_folder(folder_name)
        path = self._path(folder_name, filename)
        tmp_path = path + ".tmp"
        with open(tmp_path, "wb") as fp:
            fp.write(payload)
        os.replace(tmp_path, path)
        return path

    def read_bytes(self, folder_name, filename):
        with open(self._path(folder_name, filename), "rb") as fp:
            return fp.read()

    def list_files(self, folder_name, prefix=None, max_count=None):
        """List the files in the folder, sorted by name"""
        folder = os.path.join(self.root, folder_name)
        if not os.path.isdir(folder):
            return list()
        list_filenames = sorted(name for name in os.listdir(folder) if os.path.isfile(os.path.join(folder, name)))
        if prefix is not None:
            list_filenames = [name for name in list_filenames if name.startswith(prefix)]
        if max_count is not None:
            list_filenames = list_filenames[:max_count]
        return list_filenames
